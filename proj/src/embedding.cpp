#include "glee/embedding.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "glee/textio.hpp"

namespace glee {

std::string method_name(EmbedMethod m) {
  return m == EmbedMethod::glee ? "GLEE" : "LE";
}

EmbedMethod method_from_name(const std::string& name) {
  if (name == "GLEE") return EmbedMethod::glee;
  if (name == "LE") return EmbedMethod::le;
  throw std::invalid_argument("unknown embedding method: '" + name + "'");
}

void write_embedding(std::ostream& out, const Embedding& e) {
  const int n = e.node_count();
  const int d = e.dim();
  out << n << ' ' << d << ' ' << method_name(e.method) << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j) out << ' ';
      out << format_double(e.coords(i, j));
    }
    out << '\n';
  }
  for (int j = 0; j < d; ++j) {
    if (j) out << ' ';
    out << format_double(e.eigenvalues(j));
  }
  out << '\n';
}

void write_embedding_file(const std::string& path, const Embedding& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_embedding(out, e);
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string t;
  while (is >> t) tokens.push_back(t);
  return tokens;
}

std::string read_required_line(std::istream& in, std::size_t line_no) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("embedding file: unexpected end of file at line " +
                             std::to_string(line_no));
  return line;
}

}  // namespace

Embedding read_embedding(std::istream& in) {
  const auto header = split_ws(read_required_line(in, 1));
  if (header.size() != 3)
    throw std::runtime_error("embedding file: header must be 'n d method'");
  const long long n = parse_int(header[0]);
  const long long d = parse_int(header[1]);
  if (n < 1 || d < 1)
    throw std::runtime_error("embedding file: header dimensions must be >= 1");

  if (header[2] != "GLEE" && header[2] != "LE")
    throw std::runtime_error("embedding file: unknown method '" + header[2] +
                             "'");
  Embedding e;
  e.method = method_from_name(header[2]);
  e.coords.resize(n, d);
  e.eigenvalues.resize(d);
  for (long long i = 0; i < n; ++i) {
    const auto row = split_ws(read_required_line(in, static_cast<std::size_t>(i) + 2));
    if (static_cast<long long>(row.size()) != d)
      throw std::runtime_error("embedding file: line " + std::to_string(i + 2) +
                               " has " + std::to_string(row.size()) +
                               " values, expected " + std::to_string(d));
    for (long long j = 0; j < d; ++j) e.coords(i, j) = parse_double(row[j]);
  }
  const auto eig = split_ws(read_required_line(in, static_cast<std::size_t>(n) + 2));
  if (static_cast<long long>(eig.size()) != d)
    throw std::runtime_error("embedding file: eigenvalue line has " +
                             std::to_string(eig.size()) + " values, expected " +
                             std::to_string(d));
  for (long long j = 0; j < d; ++j) e.eigenvalues(j) = parse_double(eig[j]);
  return e;
}

Embedding read_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  return read_embedding(in);
}

}  // namespace glee
