#include "dbsim/serialize.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

static_assert(std::endian::native == std::endian::little,
              "matrix serialization assumes a little-endian host");

namespace dbsim::serialize {

std::vector<std::byte> matrix_bytes(const Matrix& m) {
  std::vector<std::byte> out(static_cast<std::size_t>(m.size()) * 2 * sizeof(double));
  std::size_t pos = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double re = m(r, c).real(), im = m(r, c).imag();
      std::memcpy(out.data() + pos, &re, sizeof(double));
      std::memcpy(out.data() + pos + sizeof(double), &im, sizeof(double));
      pos += 2 * sizeof(double);
    }
  return out;
}

Matrix matrix_from_bytes(const std::vector<std::byte>& bytes, long rows, long cols) {
  if (bytes.size() != static_cast<std::size_t>(rows) * cols * 2 * sizeof(double))
    throw std::invalid_argument("matrix payload size mismatch");
  Matrix m(rows, cols);
  std::size_t pos = 0;
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) {
      double re, im;
      std::memcpy(&re, bytes.data() + pos, sizeof(double));
      std::memcpy(&im, bytes.data() + pos + sizeof(double), sizeof(double));
      m(r, c) = cplx(re, im);
      pos += 2 * sizeof(double);
    }
  return m;
}

namespace {
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(const std::vector<std::byte>& data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= data.size()) {
    unsigned v = (unsigned(data[i]) << 16) | (unsigned(data[i + 1]) << 8) | unsigned(data[i + 2]);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back(kB64[v & 63]);
    i += 3;
  }
  std::size_t rem = data.size() - i;
  if (rem == 1) {
    unsigned v = unsigned(data[i]) << 16;
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out += "==";
  } else if (rem == 2) {
    unsigned v = (unsigned(data[i]) << 16) | (unsigned(data[i + 1]) << 8);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::vector<std::byte> base64_decode(const std::string& text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::byte> out;
  unsigned buffer = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = value(c);
    if (v < 0) throw std::invalid_argument("invalid base64 character");
    buffer = (buffer << 6) | unsigned(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(std::byte((buffer >> bits) & 0xff));
    }
  }
  return out;
}

nlohmann::json operator_to_json(const Operator& op) {
  nlohmann::json j;
  j["format"] = "complex128-row-major-le";
  j["ancilla_dim"] = op.layout.ancilla_dim;
  j["mode_dims"] = op.layout.mode_dims;
  j["rows"] = op.matrix.rows();
  j["cols"] = op.matrix.cols();
  j["data_b64"] = base64_encode(matrix_bytes(op.matrix));
  return j;
}

Operator operator_from_json(const nlohmann::json& j) {
  if (j.at("format").get<std::string>() != "complex128-row-major-le")
    throw std::invalid_argument("unknown operator serialization format");
  HilbertLayout layout(j.at("mode_dims").get<std::vector<int>>());
  long rows = j.at("rows").get<long>();
  long cols = j.at("cols").get<long>();
  Matrix m = matrix_from_bytes(base64_decode(j.at("data_b64").get<std::string>()), rows, cols);
  if (rows == layout.dim() && cols == layout.dim())
    return Operator{layout, std::move(m), OperatorRole::Generic};
  throw std::invalid_argument("operator payload does not match layout dimension");
}

void save_operator(const Operator& op, const std::string& path) {
  write_text_file(path, operator_to_json(op).dump(2) + "\n");
}

Operator load_operator(const std::string& path) {
  return operator_from_json(nlohmann::json::parse(read_text_file(path)));
}

void write_matrix_raw(const Matrix& m, const std::string& path) {
  auto bytes = matrix_bytes(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

CsvWriter::CsvWriter(std::vector<std::string> columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

std::string CsvWriter::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::add_row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += values[i];
  }
  body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::save(const std::string& path) const { write_text_file(path, body_); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace dbsim::serialize
