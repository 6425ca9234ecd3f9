#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dbsim/layout.hpp"

namespace dbsim::serialize {

// Matrix payloads are row-major interleaved (re, im) little-endian float64.
std::vector<std::byte> matrix_bytes(const Matrix& m);
Matrix matrix_from_bytes(const std::vector<std::byte>& bytes, long rows, long cols);

nlohmann::json operator_to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j);

void save_operator(const Operator& op, const std::string& path);
Operator load_operator(const std::string& path);

// Raw binary dump (no header) for cross-checks from other tooling.
void write_matrix_raw(const Matrix& m, const std::string& path);

std::string base64_encode(const std::vector<std::byte>& data);
std::vector<std::byte> base64_decode(const std::string& text);

// Deterministic CSV writer: fixed %.17g float formatting, '\n' line ends.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& values);
  std::string str() const;
  void save(const std::string& path) const;
  static std::string format_double(double v);

 private:
  std::string body_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dbsim::serialize
