#include "sparsetls/instance_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sparsetls {

namespace {

constexpr const char* kMagic = "PCS1";

void write_row(std::ostream& os, const double* data, Index n) {
  for (Index j = 0; j < n; ++j) {
    if (j) os << ' ';
    os << fmt::format("{:.17g}", data[j]);
  }
  os << '\n';
}

void write_matrix(std::ostream& os, const char* label, const Matrix& m) {
  os << label << '\n';
  for (Index i = 0; i < m.rows(); ++i) write_row(os, m.row(i).data(), m.cols());
}

void write_vector(std::ostream& os, const char* label, const Vector& v) {
  os << label << '\n';
  write_row(os, v.data(), v.size());
}

void expect_label(std::istream& is, const std::string& label) {
  std::string got;
  if (!(is >> got) || got != label) {
    throw std::runtime_error("instance file: expected block '" + label + "', found '" + got + "'");
  }
}

double read_value(std::istream& is, const std::string& block) {
  std::string token;
  if (!(is >> token)) throw std::runtime_error("instance file: truncated block '" + block + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) {
    throw std::runtime_error("instance file: bad number '" + token + "' in block '" + block + "'");
  }
  return v;
}

Matrix read_matrix(std::istream& is, const std::string& label, Index rows, Index cols) {
  expect_label(is, label);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = read_value(is, label);
  return m;
}

Vector read_vector(std::istream& is, const std::string& label, Index n) {
  expect_label(is, label);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = read_value(is, label);
  return v;
}

}  // namespace

void write_instance(std::ostream& os, const InstanceHeader& h, const ProblemInstance& inst) {
  os << kMagic << ' ' << h.M << ' ' << h.N << ' ' << h.K << ' ' << fmt::format("{:.17g}", h.xi)
     << ' ' << h.seed << '\n';
  write_matrix(os, "A_o", inst.A_o);
  write_vector(os, "x_o", inst.x_o);
  write_matrix(os, "E_o", inst.E_o);
  write_vector(os, "e_o", inst.e_o);
  write_vector(os, "b", inst.b);
}

LoadedInstance read_instance(std::istream& is) {
  std::string magic;
  if (!(is >> magic) || magic != kMagic) {
    throw std::runtime_error("instance file: missing PCS1 header");
  }
  LoadedInstance out;
  auto& h = out.header;
  if (!(is >> h.M >> h.N >> h.K)) throw std::runtime_error("instance file: bad dimensions");
  h.xi = read_value(is, "header");
  if (!(is >> h.seed)) throw std::runtime_error("instance file: bad seed");
  if (h.M < 1 || h.N < 1) throw std::runtime_error("instance file: non-positive dimensions");

  auto& p = out.instance;
  p.A_o = read_matrix(is, "A_o", h.M, h.N);
  p.x_o = read_vector(is, "x_o", h.N);
  p.E_o = read_matrix(is, "E_o", h.M, h.N);
  p.e_o = read_vector(is, "e_o", h.M);
  p.b = read_vector(is, "b", h.M);
  p.A = p.A_o - p.E_o;
  p.b_o = p.b + p.e_o;
  return out;
}

void save_instance(const std::filesystem::path& path, const InstanceHeader& header,
                   const ProblemInstance& inst) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_instance(os, header, inst);
  os.flush();
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return read_instance(is);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace sparsetls
