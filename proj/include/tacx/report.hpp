#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tacx/algebra.hpp"
#include "tacx/linear_complex.hpp"

namespace tacx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::string& path);

/// tool, version, command, prime and the SHA-256 of every input file. No timestamps.
Json report_header(const std::string& command, std::uint32_t prime, const std::vector<std::string>& inputs);
/// Pretty-printed with a trailing newline.
void write_report(const Json& report, const std::string& path);

Json form_json(const ShortAlgebra& alg, std::span<const Residue> v);
/// Degree-2 vector as its basis-monomial expansion, e.g. "x1*z1 - y1*z1".
std::string degree2_text(const ShortAlgebra& alg, std::span<const Residue> v);
Json matrix_json(const LinearMatrix& m);
Json matrix_json(const Matrix& m);
Json bools_json(const std::vector<bool>& v);

}  // namespace tacx
