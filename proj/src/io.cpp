#include "clusterforge/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace clusterforge {

namespace {

const char* const kHeader = "clusterforge/1";

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Nested bracket lists of integers.
struct Value {
  bool is_list = false;
  Integer number;
  std::vector<Value> items;
};

class ValueParser {
 public:
  ValueParser(const std::string& s, const std::string& file, int line) : s_(s), file_(file), line_(line) {}

  Value parse() {
    Value v = value();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(file_, line_, what); }

  Value value() {
    skip();
    if (pos_ >= s_.size()) fail("missing value");
    Value v;
    if (s_[pos_] == '[') {
      v.is_list = true;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        skip();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return v;
        }
        fail("expected ',' or ']'");
      }
    }
    std::size_t start = pos_;
    if (s_[pos_] == '-' || s_[pos_] == '+') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits = s_.substr(start, pos_ - start);
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer or '['");
    if (digits[0] == '+') digits.erase(0, 1);
    v.number = Integer(digits);
    return v;
  }

  const std::string& s_;
  const std::string& file_;
  int line_;
  std::size_t pos_ = 0;
};

struct Field {
  std::string value;
  int line = 0;
};

struct Document {
  std::string name;
  std::map<std::string, Field> fields;
};

Document read_document(const std::string& text, const std::string& name) {
  Document doc;
  doc.name = name;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (!header) {
      if (s != kHeader) throw ParseError(name, line, "expected header '" + std::string(kHeader) + "'");
      header = true;
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError(name, line, "expected 'key: value'");
    std::string key = trim(s.substr(0, colon));
    // normalize "action   3" to "action 3"
    std::istringstream ks(key);
    std::string word, norm;
    while (ks >> word) norm += (norm.empty() ? "" : " ") + word;
    if (doc.fields.count(norm)) throw ParseError(name, line, "duplicate key '" + norm + "'");
    doc.fields[norm] = {trim(s.substr(colon + 1)), line};
  }
  if (!header) throw ParseError(name, line, "empty file, expected header '" + std::string(kHeader) + "'");
  return doc;
}

Value field_value(const Document& d, const Field& f) { return ValueParser(f.value, d.name, f.line).parse(); }

long small_int(const Document& d, const Field& f, const Value& v, const std::string& what) {
  if (v.is_list || !v.number.fits_slong_p()) throw ParseError(d.name, f.line, what + " must be an integer");
  return v.number.get_si();
}

bool has_quiver_fields(const Document& d) { return d.fields.count("vertices") || d.fields.count("arrows"); }

Quiver quiver_from(const Document& d) {
  auto vit = d.fields.find("vertices");
  if (vit == d.fields.end()) throw ParseError(d.name, 0, "missing 'vertices'");
  long n = small_int(d, vit->second, field_value(d, vit->second), "vertices");
  if (n < 1) throw ParseError(d.name, vit->second.line, "vertices must be positive");
  std::vector<Arrow> arrows;
  auto ait = d.fields.find("arrows");
  if (ait != d.fields.end()) {
    Value list = field_value(d, ait->second);
    if (!list.is_list) throw ParseError(d.name, ait->second.line, "arrows must be a list");
    for (const auto& a : list.items) {
      if (!a.is_list || a.items.size() != 2)
        throw ParseError(d.name, ait->second.line, "each arrow must be [source,target]");
      long s = small_int(d, ait->second, a.items[0], "arrow source");
      long t = small_int(d, ait->second, a.items[1], "arrow target");
      arrows.push_back({static_cast<int>(s), static_cast<int>(t)});
    }
  }
  try {
    return Quiver(static_cast<int>(n), std::move(arrows));
  } catch (const CyclicQuiver&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(d.name, ait == d.fields.end() ? vit->second.line : ait->second.line, e.what());
  }
}

// Matrix with the given shape; "[]" stands for any matrix with no entries.
IntMatrix matrix_from(const Document& d, const Field& f, std::size_t rows, std::optional<std::size_t> cols) {
  Value v = field_value(d, f);
  if (!v.is_list) throw ParseError(d.name, f.line, "matrix must be a list of rows");
  if (v.items.empty()) {
    if (rows == 0 || !cols || *cols == 0) return IntMatrix(rows, cols.value_or(0));
    throw ParseError(d.name, f.line, "expected " + std::to_string(rows) + " rows, got none");
  }
  if (v.items.size() != rows)
    throw ParseError(d.name, f.line, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.items.size()));
  std::size_t c = cols.value_or(v.items[0].items.size());
  IntMatrix m(rows, c);
  for (std::size_t i = 0; i < rows; ++i) {
    const Value& row = v.items[i];
    if (!row.is_list) throw ParseError(d.name, f.line, "matrix rows must be lists");
    if (row.items.size() != c)
      throw ParseError(d.name, f.line,
                       "row " + std::to_string(i + 1) + " has " + std::to_string(row.items.size()) + " entries, expected " +
                           std::to_string(c));
    for (std::size_t j = 0; j < c; ++j) {
      if (row.items[j].is_list) throw ParseError(d.name, f.line, "matrix entries must be integers");
      m(i, j) = row.items[j].number;
    }
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<int> indexed_key(const std::string& key, const std::string& prefix) {
  if (key.rfind(prefix + " ", 0) != 0) return std::nullopt;
  std::string rest = key.substr(prefix.size() + 1);
  if (rest.empty() || rest.size() > 9 || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
  return std::stoi(rest);
}

}  // namespace

Quiver parse_quiver(const std::string& text, const std::string& name) {
  Document d = read_document(text, name);
  for (const auto& [k, f] : d.fields)
    if (k != "vertices" && k != "arrows") throw ParseError(name, f.line, "unknown key '" + k + "'");
  return quiver_from(d);
}

Quiver load_quiver(const std::string& path) { return parse_quiver(read_file(path), path); }

ZRep parse_rep(const std::string& text, const std::string& name, const Quiver* q, const std::string& base_dir) {
  Document d = read_document(text, name);
  std::optional<Quiver> own;
  if (has_quiver_fields(d)) {
    own = quiver_from(d);
  } else if (auto it = d.fields.find("quiver"); it != d.fields.end()) {
    std::filesystem::path p(it->second.value);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    own = load_quiver(p.string());
  }
  if (own && q && !(*own == *q)) throw ParseError(name, 0, "representation quiver differs from the given quiver");
  if (!own && !q) throw ParseError(name, 0, "no quiver: give 'vertices'/'arrows' or 'quiver: <file>'");
  const Quiver quiver = own ? *own : *q;
  const auto n = static_cast<std::size_t>(quiver.vertex_count());

  auto git = d.fields.find("generators");
  if (git == d.fields.end()) throw ParseError(name, 0, "missing 'generators'");
  Value gv = field_value(d, git->second);
  if (!gv.is_list || gv.items.size() != n)
    throw ParseError(name, git->second.line, "generators must list " + std::to_string(n) + " counts");
  std::vector<std::size_t> gens;
  for (const auto& g : gv.items) {
    long c = small_int(d, git->second, g, "generator count");
    if (c < 0) throw ParseError(name, git->second.line, "generator counts must be nonnegative");
    gens.push_back(static_cast<std::size_t>(c));
  }
  std::vector<IntMatrix> rels(n), acts(quiver.arrow_count());
  for (std::size_t v = 0; v < n; ++v) rels[v] = IntMatrix(gens[v], 0);
  for (std::size_t a = 0; a < quiver.arrow_count(); ++a)
    acts[a] = IntMatrix(gens[static_cast<std::size_t>(quiver.arrow(a).target - 1)],
                        gens[static_cast<std::size_t>(quiver.arrow(a).source - 1)]);
  for (const auto& [k, f] : d.fields) {
    if (k == "vertices" || k == "arrows" || k == "quiver" || k == "generators") continue;
    if (auto v = indexed_key(k, "relations")) {
      if (*v < 1 || *v > static_cast<int>(n)) throw ParseError(name, f.line, "no vertex " + std::to_string(*v));
      rels[static_cast<std::size_t>(*v - 1)] = matrix_from(d, f, gens[static_cast<std::size_t>(*v - 1)], std::nullopt);
      continue;
    }
    if (auto a = indexed_key(k, "action")) {
      if (*a < 1 || *a > static_cast<int>(quiver.arrow_count()))
        throw ParseError(name, f.line, "no arrow " + std::to_string(*a));
      auto& m = acts[static_cast<std::size_t>(*a - 1)];
      m = matrix_from(d, f, m.rows(), m.cols());
      continue;
    }
    throw ParseError(name, f.line, "unknown key '" + k + "'");
  }
  return ZRep(quiver, gens, rels, acts);
}

ZRep load_rep(const std::string& path, const Quiver* q) {
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_rep(read_file(path), path, q, dir.empty() ? "." : dir);
}

std::string format_quiver(const Quiver& q) {
  std::ostringstream os;
  os << kHeader << "\nvertices: " << q.vertex_count() << "\narrows: [";
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    os << (a ? "," : "") << "[" << q.arrow(a).source << "," << q.arrow(a).target << "]";
  os << "]\n";
  return os.str();
}

std::string format_rep(const ZRep& m) {
  const Quiver& q = m.quiver();
  std::ostringstream os;
  os << format_quiver(q) << "generators: [";
  for (int v = 1; v <= q.vertex_count(); ++v) os << (v > 1 ? "," : "") << m.generators(v);
  os << "]\n";
  for (int v = 1; v <= q.vertex_count(); ++v)
    if (m.relations(v).cols() > 0) os << "relations " << v << ": " << m.relations(v).to_string() << "\n";
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    if (!m.action(a).empty()) os << "action " << a + 1 << ": " << m.action(a).to_string() << "\n";
  return os.str();
}

ZRep resolve_rep(const std::string& arg, const Quiver& q) {
  static const std::regex token("^([PIS])([0-9]+)$");
  std::smatch match;
  if (std::regex_match(arg, match, token) && !std::filesystem::exists(arg)) {
    int i = std::stoi(match[2]);
    if (i < 1 || i > q.vertex_count()) throw std::invalid_argument("no vertex " + match[2].str());
    char kind = match[1].str()[0];
    if (kind == 'P') return projective(q, i);
    if (kind == 'I') return injective_lattice(q, i);
    return simple_lattice(q, i);
  }
  return load_rep(arg, &q);
}

std::vector<ClusterObject> parse_cluster(const std::string& text, const RigidPool& pool) {
  static const std::regex named("^(SP|P|I|S)([0-9]+)$");
  const Quiver& q = pool.quiver();
  std::vector<ClusterObject> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ';')) {
    std::string t;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) continue;
    std::smatch match;
    if (std::regex_match(t, match, named)) {
      int i = std::stoi(match[2]);
      if (i < 1 || i > q.vertex_count()) throw std::invalid_argument("no vertex " + match[2].str() + " in '" + t + "'");
      std::string kind = match[1];
      if (kind == "SP")
        out.push_back(ClusterObject::shifted_projective(q, i));
      else if (kind == "P")
        out.push_back(ClusterObject::module(projective(q, i)));
      else if (kind == "I")
        out.push_back(ClusterObject::module(injective_lattice(q, i)));
      else
        out.push_back(ClusterObject::module(simple_lattice(q, i)));
      continue;
    }
    if (t.front() == '(' && t.back() == ')') {
      auto found = pool.find("M" + t);
      if (!found) throw std::invalid_argument("no pool object with rank vector " + t);
      out.push_back(*found);
      continue;
    }
    throw std::invalid_argument("cannot read cluster summand '" + t + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty cluster");
  return out;
}

}  // namespace clusterforge
