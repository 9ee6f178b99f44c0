#include "tacx/report.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "tacx/error.hpp"

namespace tacx {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string file_sha256(const std::string& path) { return sha256_hex(read_text_file(path)); }

Json report_header(const std::string& command, std::uint32_t prime, const std::vector<std::string>& inputs) {
  Json j;
  j["tool"] = "tacx";
  j["version"] = kVersion;
  j["command"] = command;
  j["prime"] = prime;
  Json files = Json::array();
  for (const auto& path : inputs) files.push_back({{"path", path}, {"sha256", file_sha256(path)}});
  j["inputs"] = files;
  return j;
}

void write_report(const Json& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write report to '" + path + "'");
  out << report.dump(2) << '\n';
}

Json form_json(const ShortAlgebra& alg, std::span<const Residue> v) { return format_form(alg, v); }

std::string degree2_text(const ShortAlgebra& alg, std::span<const Residue> v) {
  QuadricTerms terms;
  for (std::size_t t = 0; t < v.size(); ++t)
    if (v[t]) terms[alg.basis_monomials()[t]] = alg.field().signed_value(v[t]);
  return format_quadric(alg.presentation().variables, terms);
}

Json matrix_json(const LinearMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_form(*m.algebra(), m.entry(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().signed_value(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json bools_json(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

}  // namespace tacx
