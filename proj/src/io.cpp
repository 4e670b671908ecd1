#include "mmspace/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

using Fields = std::vector<std::pair<std::string, std::vector<std::string>>>;

Fields tokenize_fields(std::string_view text, const std::vector<std::string>& allowed) {
  Fields fields;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string tok;
    while (words >> tok) {
      if (tok.back() == ':') {
        std::string key = tok.substr(0, tok.size() - 1);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
          throw ParseError("unknown field '" + key + "'");
        for (const auto& f : fields)
          if (f.first == key) throw ParseError("duplicate field '" + key + "'");
        fields.emplace_back(key, std::vector<std::string>{});
      } else {
        if (fields.empty()) throw ParseError("value '" + tok + "' before any field");
        fields.back().second.push_back(tok);
      }
    }
  }
  return fields;
}

const std::vector<std::string>* find_field(const Fields& f, std::string_view key) {
  for (const auto& [k, v] : f)
    if (k == key) return &v;
  return nullptr;
}

const std::vector<std::string>& require_field(const Fields& f, std::string_view key) {
  auto* v = find_field(f, key);
  if (!v) throw ParseError("missing field '" + std::string(key) + "'");
  return *v;
}

std::vector<Rational> to_numbers(const std::vector<std::string>& toks) {
  std::vector<Rational> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(parse_rational(t));
  return out;
}

std::size_t to_index(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("not an index: '" + tok + "'");
  return std::stoul(tok);
}

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_row(std::ostringstream& os, std::span<const Rational> row) {
  for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << to_exact_string(row[j]);
}

}  // namespace

SpaceFile parse_space(std::string_view text) {
  auto fields = tokenize_fields(text, {"labels", "dist", "mass", "coords"});
  SpaceFile file;
  file.data.labels = require_field(fields, "labels");
  const std::size_t n = file.data.labels.size();

  auto dist = to_numbers(require_field(fields, "dist"));
  if (dist.size() != n * n)
    throw ParseError("dist has " + std::to_string(dist.size()) + " entries; expected " +
                     std::to_string(n * n));
  file.data.dist = Matrix<Rational>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) file.data.dist(i, j) = dist[i * n + j];

  if (auto* mass = find_field(fields, "mass")) file.data.mass = to_numbers(*mass);

  if (auto* coords = find_field(fields, "coords")) {
    auto c = to_numbers(*coords);
    if (c.size() != 2 * n) throw ParseError("coords must hold 2 numbers per point");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(c[2 * i], c[2 * i + 1]);
    file.coords = std::move(pts);
  }
  return file;
}

SpaceFile read_space_file(const std::string& path) { return parse_space(read_all(path)); }

std::string format_space(const SpaceFile& file) {
  const auto& d = file.data;
  std::ostringstream os;
  os << "labels:";
  for (const auto& l : d.labels) os << " " << l;
  os << "\ndist:\n";
  for (std::size_t i = 0; i < d.dist.rows(); ++i) {
    os << "  ";
    write_row(os, d.dist.row(i));
    os << "\n";
  }
  if (d.mass) {
    os << "mass: ";
    write_row(os, *d.mass);
    os << "\n";
  }
  if (file.coords) {
    os << "coords:\n";
    for (const auto& [x, y] : *file.coords)
      os << "  " << to_exact_string(x) << " " << to_exact_string(y) << "\n";
  }
  return os.str();
}

Certificate parse_certificate(std::string_view text) {
  auto fields = tokenize_fields(text, {"shape", "pi", "S", "claimed_value", "epsilon_bound"});
  const auto& shape = require_field(fields, "shape");
  if (shape.size() != 2) throw ParseError("shape must be two integers");
  const std::size_t n = to_index(shape[0]);
  const std::size_t m = to_index(shape[1]);

  auto pi = to_numbers(require_field(fields, "pi"));
  if (pi.size() != n * m) throw ParseError("pi entry count does not match shape");
  Certificate cert;
  cert.pi = Coupling(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) cert.pi(i, j) = pi[i * m + j];

  const auto& s = require_field(fields, "S");
  if (s.size() % 2 != 0) throw ParseError("S must list index pairs");
  std::vector<Cell> cells;
  for (std::size_t k = 0; k < s.size(); k += 2) cells.emplace_back(to_index(s[k]), to_index(s[k + 1]));
  cert.S = Relation(std::move(cells));
  cert.S.check_bounds(n, m);

  const auto& claim = require_field(fields, "claimed_value");
  if (claim.size() != 1) throw ParseError("claimed_value must be one number");
  cert.claimed_value = parse_rational(claim[0]);

  if (auto* eps = find_field(fields, "epsilon_bound")) {
    if (eps->size() != 1) throw ParseError("epsilon_bound must be one number");
    cert.epsilon_bound = parse_rational((*eps)[0]);
  }
  return cert;
}

Certificate read_certificate_file(const std::string& path) {
  return parse_certificate(read_all(path));
}

std::string format_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "shape: " << cert.pi.rows() << " " << cert.pi.cols() << "\npi:\n";
  for (std::size_t i = 0; i < cert.pi.rows(); ++i) {
    os << "  ";
    write_row(os, cert.pi.row(i));
    os << "\n";
  }
  os << "S:";
  for (auto [i, j] : cert.S) os << "  " << i << " " << j;
  os << "\nclaimed_value: " << to_exact_string(cert.claimed_value) << "\n";
  if (cert.epsilon_bound) os << "epsilon_bound: " << to_exact_string(*cert.epsilon_bound) << "\n";
  return os.str();
}

std::vector<Rational> parse_number_list(std::string_view text) {
  std::string s(text);
  for (auto& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream words(s);
  std::vector<Rational> out;
  std::string tok;
  while (words >> tok) out.push_back(parse_rational(tok));
  return out;
}

Relation parse_relation(std::string_view text) {
  std::string s(text);
  for (auto& c : s)
    if (c == ',' || c == ';' || c == '(' || c == ')') c = ' ';
  std::istringstream words(s);
  std::vector<std::size_t> idx;
  std::string tok;
  while (words >> tok) idx.push_back(to_index(tok));
  if (idx.size() % 2 != 0) throw ParseError("relation must list index pairs");
  std::vector<Cell> cells;
  for (std::size_t k = 0; k < idx.size(); k += 2) cells.emplace_back(idx[k], idx[k + 1]);
  return Relation(std::move(cells));
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace mmspace
