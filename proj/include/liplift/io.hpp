#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/free_space.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/operator_lifting.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string digest_hex(std::string_view bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::io_error, "cannot write '" + path + "'");
  out << content;
}

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Line-oriented tokenizer with positions for diagnostics. Interior blank
// lines are format violations; trailing blank lines are tolerated.
class LineReader {
 public:
  LineReader(std::string name, std::string_view content) : name_(std::move(name)) {
    std::size_t start = 0;
    while (start <= content.size()) {
      std::size_t end = content.find('\n', start);
      if (end == std::string_view::npos) {
        if (start < content.size()) lines_.emplace_back(content.substr(start));
        break;
      }
      lines_.emplace_back(content.substr(start, end - start));
      start = end + 1;
    }
    while (!lines_.empty() && blank(lines_.back())) lines_.pop_back();
  }

  const std::string& name() const { return name_; }
  bool eof() const { return cursor_ >= lines_.size(); }
  int line_no() const { return static_cast<int>(cursor_) + 1; }

  std::vector<Token> next_line() {
    if (eof()) fail(line_no(), 1, "unexpected end of file");
    const std::string& line = lines_[cursor_++];
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t begin = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      tokens.push_back(Token{line.substr(begin, i - begin), static_cast<int>(begin) + 1});
    }
    if (tokens.empty()) fail(line_no() - 1, 1, "blank line inside the file body");
    return tokens;
  }

  [[noreturn]] void fail(int line, int column, const std::string& message) const {
    throw parse_error(name_, line, column, message);
  }

 private:
  static bool blank(const std::string& s) {
    for (char c : s) {
      if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
  }

  std::string name_;
  std::vector<std::string> lines_;
  std::size_t cursor_ = 0;
};

template <class T>
T parse_number(const LineReader& reader, int line, const Token& tok) {
  auto v = scalar_traits<T>::parse(tok.text);
  if (!v) reader.fail(line, tok.column, "expected a number, got '" + tok.text + "'");
  return *v;
}

inline long long parse_int(const LineReader& reader, int line, const Token& tok) {
  if (tok.text.empty()) reader.fail(line, tok.column, "expected an integer");
  for (std::size_t i = tok.text[0] == '-' ? 1 : 0; i < tok.text.size(); ++i) {
    if (tok.text[i] < '0' || tok.text[i] > '9') {
      reader.fail(line, tok.column, "expected an integer, got '" + tok.text + "'");
    }
  }
  return std::strtoll(tok.text.c_str(), nullptr, 10);
}

inline std::string resolve_relative(const std::string& referencing_file,
                                    const std::string& target) {
  std::filesystem::path t(target);
  if (t.is_absolute()) return target;
  return (std::filesystem::path(referencing_file).parent_path() / t).string();
}

template <class T>
std::string pair_label(const PointedMetricSpace<T>& space, const Pair& p) {
  return "(" + space.label(p.x) + "," + space.label(p.y) + ")";
}

template <class T>
Pair parse_pair_label(const LineReader& reader, int line, const Token& tok,
                      const PointedMetricSpace<T>& space) {
  const std::string& s = tok.text;
  std::size_t comma = s.find(',');
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string::npos) {
    reader.fail(line, tok.column, "expected a pair label '(x,y)', got '" + s + "'");
  }
  std::string lx = s.substr(1, comma - 1);
  std::string ly = s.substr(comma + 1, s.size() - comma - 2);
  int x = space.index_of_label(lx);
  int y = space.index_of_label(ly);
  if (x < 0 || y < 0 || x == y) {
    reader.fail(line, tok.column, "pair label '" + s + "' does not name two distinct points");
  }
  return Pair{x, y};
}

}  // namespace detail

// ----- space files -----------------------------------------------------
// points <n>
// base <index>
// labels <name_0> ... <name_{n-1}>
// <n rows of n distances>

template <class T>
SpacePtr<T> parse_space_text(const std::string& name, std::string_view content) {
  detail::LineReader reader(name, content);
  int line = reader.line_no();
  auto head = reader.next_line();
  if (head.size() != 2 || head[0].text != "points") {
    reader.fail(line, head[0].column, "expected 'points <n>'");
  }
  long long n = detail::parse_int(reader, line, head[1]);
  if (n < 1 || n > 1000000) reader.fail(line, head[1].column, "point count out of range");

  line = reader.line_no();
  auto base_line = reader.next_line();
  if (base_line.size() != 2 || base_line[0].text != "base") {
    reader.fail(line, base_line[0].column, "expected 'base <index>'");
  }
  long long base = detail::parse_int(reader, line, base_line[1]);

  line = reader.line_no();
  auto labels_line = reader.next_line();
  if (labels_line.empty() || labels_line[0].text != "labels") {
    reader.fail(line, labels_line[0].column, "expected 'labels <name...>'");
  }
  if (static_cast<long long>(labels_line.size()) != n + 1) {
    reader.fail(line, labels_line.back().column,
                "expected " + std::to_string(n) + " labels, got " +
                    std::to_string(labels_line.size() - 1));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 1; i < labels_line.size(); ++i) {
    if (!valid_label(labels_line[i].text)) {
      reader.fail(line, labels_line[i].column, "invalid label '" + labels_line[i].text + "'");
    }
    labels.push_back(labels_line[i].text);
  }

  Matrix<T> dist(n, std::vector<T>(n, scalar_traits<T>::zero()));
  for (long long i = 0; i < n; ++i) {
    line = reader.line_no();
    auto row = reader.next_line();
    if (static_cast<long long>(row.size()) != n) {
      reader.fail(line, row.back().column,
                  "expected " + std::to_string(n) + " distances, got " +
                      std::to_string(row.size()));
    }
    for (long long j = 0; j < n; ++j) dist[i][j] = detail::parse_number<T>(reader, line, row[j]);
  }
  if (!reader.eof()) {
    reader.fail(reader.line_no(), 1, "unexpected content after the distance matrix");
  }
  return new_space<T>(std::move(labels), std::move(dist), static_cast<int>(base));
}

template <class T>
SpacePtr<T> parse_space_file(const std::string& path) {
  return parse_space_text<T>(path, read_file(path));
}

template <class T>
std::string format_space(const PointedMetricSpace<T>& space) {
  std::ostringstream out;
  out << "points " << space.size() << "\n";
  out << "base " << space.base() << "\n";
  out << "labels";
  for (int i = 0; i < space.size(); ++i) out << " " << space.label(i);
  out << "\n";
  for (int i = 0; i < space.size(); ++i) {
    for (int j = 0; j < space.size(); ++j) {
      out << (j > 0 ? " " : "") << scalar_traits<T>::to_string(space.dist(i, j));
    }
    out << "\n";
  }
  return out.str();
}

// ----- function / free vector files ------------------------------------
// function <space-file>      (or: freevector <space-file>)
// <label> <value>            one line per non-base point; missing lines
//                            default to zero

namespace detail {

template <class T>
std::pair<SpacePtr<T>, std::vector<T>> parse_labeled_values(const std::string& path,
                                                            std::string_view content,
                                                            const std::string& keyword) {
  LineReader reader(path, content);
  int line = reader.line_no();
  auto head = reader.next_line();
  if (head.size() != 2 || head[0].text != keyword) {
    reader.fail(line, head[0].column, "expected '" + keyword + " <space-file>'");
  }
  SpacePtr<T> space = parse_space_file<T>(resolve_relative(path, head[1].text));
  std::vector<T> values(space->non_base_count(), scalar_traits<T>::zero());
  std::vector<bool> seen(space->size(), false);
  while (!reader.eof()) {
    line = reader.line_no();
    auto row = reader.next_line();
    if (row.size() != 2) {
      reader.fail(line, row[0].column, "expected '<label> <value>'");
    }
    int idx = space->index_of_label(row[0].text);
    if (idx < 0) reader.fail(line, row[0].column, "unknown point label '" + row[0].text + "'");
    if (idx == space->base()) {
      reader.fail(line, row[0].column, "the base point value is fixed at 0");
    }
    if (seen[idx]) reader.fail(line, row[0].column, "duplicate label '" + row[0].text + "'");
    seen[idx] = true;
    values[space->coord_of(idx)] = parse_number<T>(reader, line, row[1]);
  }
  return {space, std::move(values)};
}

}  // namespace detail

template <class T>
LipschitzFunction<T> parse_function_file(const std::string& path) {
  auto [space, values] = detail::parse_labeled_values<T>(path, read_file(path), "function");
  return LipschitzFunction<T>(space, std::move(values));
}

template <class T>
FreeVector<T> parse_free_vector_file(const std::string& path) {
  auto [space, values] = detail::parse_labeled_values<T>(path, read_file(path), "freevector");
  return FreeVector<T>(space, std::move(values));
}

template <class T>
std::string format_function(const LipschitzFunction<T>& f, const std::string& space_file) {
  std::ostringstream out;
  out << "function " << space_file << "\n";
  const auto& space = *f.space();
  for (int c = 0; c < space.non_base_count(); ++c) {
    out << space.label(space.point_of_coord(c)) << " "
        << scalar_traits<T>::to_string(f.values()[c]) << "\n";
  }
  return out.str();
}

template <class T>
std::string format_free_vector(const FreeVector<T>& mu, const std::string& space_file) {
  std::ostringstream out;
  out << "freevector " << space_file << "\n";
  const auto& space = *mu.space();
  for (int c = 0; c < space.non_base_count(); ++c) {
    out << space.label(space.point_of_coord(c)) << " "
        << scalar_traits<T>::to_string(mu.coeffs()[c]) << "\n";
  }
  return out.str();
}

// ----- operator files ---------------------------------------------------
// operator <domain-space-file> <codomain-space-file>
// <|N|-1 rows of |M|-1 entries>   rows follow codomain non-base order,
//                                 columns domain non-base order

template <class T>
struct OperatorInput {
  LipOperator<T> op;
  std::string domain_path;
  std::string codomain_path;
};

template <class T>
OperatorInput<T> parse_operator_input(const std::string& path) {
  std::string content = read_file(path);
  detail::LineReader reader(path, content);
  int line = reader.line_no();
  auto head = reader.next_line();
  if (head.size() != 3 || head[0].text != "operator") {
    reader.fail(line, head[0].column, "expected 'operator <domain-space> <codomain-space>'");
  }
  std::string domain_path = detail::resolve_relative(path, head[1].text);
  std::string codomain_path = detail::resolve_relative(path, head[2].text);
  SpacePtr<T> domain = parse_space_file<T>(domain_path);
  SpacePtr<T> codomain = parse_space_file<T>(codomain_path);
  int rows = codomain->non_base_count();
  int cols = domain->non_base_count();
  Matrix<T> m(rows, std::vector<T>(cols, scalar_traits<T>::zero()));
  for (int i = 0; i < rows; ++i) {
    line = reader.line_no();
    auto row = reader.next_line();
    if (static_cast<int>(row.size()) != cols) {
      reader.fail(line, row.back().column,
                  "expected " + std::to_string(cols) + " entries, got " +
                      std::to_string(row.size()));
    }
    for (int j = 0; j < cols; ++j) m[i][j] = detail::parse_number<T>(reader, line, row[j]);
  }
  if (!reader.eof()) reader.fail(reader.line_no(), 1, "unexpected content after the matrix");
  return OperatorInput<T>{LipOperator<T>(domain, codomain, std::move(m)), domain_path,
                          codomain_path};
}

template <class T>
LipOperator<T> parse_operator_file(const std::string& path) {
  return parse_operator_input<T>(path).op;
}

template <class T>
std::string format_operator(const LipOperator<T>& op, const std::string& domain_file,
                            const std::string& codomain_file) {
  std::ostringstream out;
  out << "operator " << domain_file << " " << codomain_file << "\n";
  for (const auto& row : op.matrix()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j > 0 ? " " : "") << scalar_traits<T>::to_string(row[j]);
    }
    out << "\n";
  }
  return out.str();
}

// ----- lifting files ----------------------------------------------------
// lifting <domain-space-file> <codomain-space-file>
// cols <pair labels of the domain pair set>
// row <pair label> <entries...>    one line per codomain pair

template <class T>
LiftingMatrix<T> parse_lifting_file(const std::string& path) {
  std::string content = read_file(path);
  detail::LineReader reader(path, content);
  int line = reader.line_no();
  auto head = reader.next_line();
  if (head.size() != 3 || head[0].text != "lifting") {
    reader.fail(line, head[0].column, "expected 'lifting <domain-space> <codomain-space>'");
  }
  SpacePtr<T> domain = parse_space_file<T>(detail::resolve_relative(path, head[1].text));
  SpacePtr<T> codomain = parse_space_file<T>(detail::resolve_relative(path, head[2].text));
  PairSet dpairs(domain->size());
  PairSet cpairs(codomain->size());

  line = reader.line_no();
  auto cols = reader.next_line();
  if (cols.empty() || cols[0].text != "cols") {
    reader.fail(line, cols[0].column, "expected 'cols <pair labels>'");
  }
  if (cols.size() != dpairs.size() + 1) {
    reader.fail(line, cols.back().column,
                "expected " + std::to_string(dpairs.size()) + " column labels, got " +
                    std::to_string(cols.size() - 1));
  }
  for (std::size_t c = 0; c < dpairs.size(); ++c) {
    Pair p = detail::parse_pair_label(reader, line, cols[c + 1], *domain);
    if (!(p == dpairs[c])) {
      reader.fail(line, cols[c + 1].column,
                  "column label out of order, expected " + detail::pair_label(*domain, dpairs[c]));
    }
  }

  Matrix<T> rows(cpairs.size(), std::vector<T>(dpairs.size(), scalar_traits<T>::zero()));
  for (std::size_t r = 0; r < cpairs.size(); ++r) {
    line = reader.line_no();
    auto row = reader.next_line();
    if (row.size() != dpairs.size() + 2 || row[0].text != "row") {
      reader.fail(line, row[0].column,
                  "expected 'row <pair> <" + std::to_string(dpairs.size()) + " entries>'");
    }
    Pair p = detail::parse_pair_label(reader, line, row[1], *codomain);
    if (!(p == cpairs[r])) {
      reader.fail(line, row[1].column,
                  "row label out of order, expected " + detail::pair_label(*codomain, cpairs[r]));
    }
    for (std::size_t c = 0; c < dpairs.size(); ++c) {
      rows[r][c] = detail::parse_number<T>(reader, line, row[c + 2]);
    }
  }
  if (!reader.eof()) reader.fail(reader.line_no(), 1, "unexpected content after the matrix");
  return LiftingMatrix<T>(domain, codomain, std::move(rows));
}

template <class T>
std::string format_lifting(const LiftingMatrix<T>& lift, const std::string& domain_file,
                           const std::string& codomain_file) {
  std::ostringstream out;
  out << "lifting " << domain_file << " " << codomain_file << "\n";
  out << "cols";
  for (std::size_t c = 0; c < lift.domain_pairs().size(); ++c) {
    out << " " << detail::pair_label(*lift.domain(), lift.domain_pairs()[c]);
  }
  out << "\n";
  for (std::size_t r = 0; r < lift.codomain_pairs().size(); ++r) {
    out << "row " << detail::pair_label(*lift.codomain(), lift.codomain_pairs()[r]);
    for (std::size_t c = 0; c < lift.domain_pairs().size(); ++c) {
      out << " " << scalar_traits<T>::to_string(lift.rows()[r][c]);
    }
    out << "\n";
  }
  return out.str();
}

// ----- composition map files ---------------------------------------------
// compose <domain-space-file> <codomain-space-file>
// scale <r>
// <codomain-label> <domain-label>    one line per codomain point: gamma

template <class T>
struct CompositionInput {
  BasePointMap<T> gamma;  // codomain of S -> domain of S
  T scale;
};

template <class T>
CompositionInput<T> parse_compose_file(const std::string& path) {
  std::string content = read_file(path);
  detail::LineReader reader(path, content);
  int line = reader.line_no();
  auto head = reader.next_line();
  if (head.size() != 3 || head[0].text != "compose") {
    reader.fail(line, head[0].column, "expected 'compose <domain-space> <codomain-space>'");
  }
  SpacePtr<T> m_space = parse_space_file<T>(detail::resolve_relative(path, head[1].text));
  SpacePtr<T> n_space = parse_space_file<T>(detail::resolve_relative(path, head[2].text));

  line = reader.line_no();
  auto scale_line = reader.next_line();
  if (scale_line.size() != 2 || scale_line[0].text != "scale") {
    reader.fail(line, scale_line[0].column, "expected 'scale <r>'");
  }
  T r = detail::parse_number<T>(reader, line, scale_line[1]);

  std::vector<int> images(n_space->size(), -1);
  for (int i = 0; i < n_space->size(); ++i) {
    line = reader.line_no();
    auto row = reader.next_line();
    if (row.size() != 2) reader.fail(line, row[0].column, "expected '<from-label> <to-label>'");
    int p = n_space->index_of_label(row[0].text);
    if (p < 0) reader.fail(line, row[0].column, "unknown point label '" + row[0].text + "'");
    if (images[p] >= 0) reader.fail(line, row[0].column, "duplicate map entry for '" + row[0].text + "'");
    int z = m_space->index_of_label(row[1].text);
    if (z < 0) reader.fail(line, row[1].column, "unknown point label '" + row[1].text + "'");
    images[p] = z;
  }
  if (!reader.eof()) reader.fail(reader.line_no(), 1, "unexpected content after the map");
  return CompositionInput<T>{BasePointMap<T>(n_space, m_space, std::move(images)), r};
}

}  // namespace liplift
