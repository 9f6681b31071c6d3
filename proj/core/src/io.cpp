#include "lowrank/io.hpp"

#include "lowrank/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace lowrank {

namespace {

// Splits the stream into tokens, dropping comments.
class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) toks_.push_back({tok, lineno});
    }
  }

  bool done() const { return pos_ >= toks_.size(); }

  double real(const char* what) {
    const auto& [tok, line] = next(what);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": expected a number for " + what +
                                 ", got '" + tok + "'");
    }
    if (!std::isfinite(v)) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": non-finite " + what);
    }
    return v;
  }

  long integer(const char* what) {
    const auto& [tok, line] = next(what);
    long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": expected an integer for " + what +
                                 ", got '" + tok + "'");
    }
    return v;
  }

  int line() const { return done() ? (toks_.empty() ? 0 : toks_.back().second) : toks_[pos_].second; }

 private:
  const std::pair<std::string, int>& next(const char* what) {
    if (done()) fail(Errc::ParseError, std::string("unexpected end of input, expected ") + what);
    return toks_[pos_++];
  }

  std::vector<std::pair<std::string, int>> toks_;
  std::size_t pos_ = 0;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  return in;
}

// Re-tag errors raised while reading a file with its path.
template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) fail(Errc::ParseError, path + ": " + e.detail());
    throw;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

ComplexMatrix read_matrix(std::istream& in) {
  Tokens t(in);
  const long rows = t.integer("row count");
  const long cols = t.integer("column count");
  if (rows < 0 || cols < 0) fail(Errc::ParseError, "negative matrix dimensions");
  ComplexMatrix a(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      const double re = t.real("real part");
      const double im = t.real("imaginary part");
      a(i, j) = Complex(re, im);
    }
  }
  if (!t.done()) {
    fail(Errc::ParseError, "line " + std::to_string(t.line()) + ": trailing data after matrix");
  }
  return a;
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out << format_double(a(i, j).real()) << ' ' << format_double(a(i, j).imag()) << '\n';
    }
  }
}

ComplexMultiset read_multiset(std::istream& in, double merge_tol) {
  Tokens t(in);
  std::vector<MultisetEntry> entries;
  while (!t.done()) {
    const int line = t.line();
    const double re = t.real("real part");
    const double im = t.real("imaginary part");
    const long count = t.integer("count");
    if (count < 1) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": count must be positive");
    }
    entries.push_back({Complex(re, im), static_cast<int>(count)});
  }
  return ComplexMultiset(std::move(entries), merge_tol);
}

void write_multiset(std::ostream& out, const ComplexMultiset& m) {
  for (const auto& e : m.entries()) {
    out << format_double(e.value.real()) << ' ' << format_double(e.value.imag()) << ' ' << e.count
        << '\n';
  }
}

WeyrChar read_weyr(std::istream& in) {
  Tokens t(in);
  // Keyed by the exact coordinates; eigenvalues are compared as written.
  std::map<std::pair<double, double>, std::map<long, long>> table;
  while (!t.done()) {
    const int line = t.line();
    const double re = t.real("real part");
    const double im = t.real("imaginary part");
    const long i = t.integer("index");
    const long eta = t.integer("eta");
    if (i < 1 || eta < 1) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": index and eta must be positive");
    }
    if (!table[{re, im}].emplace(i, eta).second) {
      fail(Errc::ParseError, "line " + std::to_string(line) + ": repeated index");
    }
  }
  std::vector<PartitionRow> rows;
  for (const auto& [key, col] : table) {
    PartitionRow r{Complex(key.first, key.second), {}};
    long expect = 1;
    for (const auto& [i, eta] : col) {
      if (i != expect++) fail(Errc::ParseError, "weyr table: indices must run 1, 2, ... without gaps");
      r.parts.push_back(static_cast<int>(eta));
    }
    rows.push_back(std::move(r));
  }
  try {
    return WeyrChar(std::move(rows), 0.0);
  } catch (const Error& e) {
    fail(Errc::ParseError, std::string("weyr table: ") + e.detail());
  }
}

void write_weyr(std::ostream& out, const WeyrChar& w) {
  for (const auto& r : w.rows()) {
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
      out << format_double(r.lambda.real()) << ' ' << format_double(r.lambda.imag()) << ' '
          << i + 1 << ' ' << r.parts[i] << '\n';
    }
  }
}

ComplexMatrix load_matrix(const std::string& path) {
  return with_path(path, [&] {
    auto in = open(path);
    return read_matrix(in);
  });
}

ComplexMultiset load_multiset(const std::string& path, double merge_tol) {
  return with_path(path, [&] {
    auto in = open(path);
    return read_multiset(in, merge_tol);
  });
}

WeyrChar load_weyr(const std::string& path) {
  return with_path(path, [&] {
    auto in = open(path);
    return read_weyr(in);
  });
}

}  // namespace lowrank
