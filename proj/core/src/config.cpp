#include "gaugelab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gaugelab {

namespace {

struct TomlValue {
  enum class Kind { Str, Num, Bool, Arr };
  Kind kind = Kind::Num;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<TomlValue> items;
  int line = 0;
};

using TomlTable = std::map<std::string, TomlValue>;

struct TomlDoc {
  TomlTable root;                                   // bare keys and "table.key"
  std::map<std::string, std::vector<TomlTable>> table_arrays;  // [[name]] blocks
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

// Recursive descent over one flattened value string.
class ValueParser {
 public:
  ValueParser(const std::string& text, int line) : text_(text), line_(line) {}

  TomlValue parse() {
    TomlValue v = value();
    skip_ws();
    if (pos_ != text_.size()) fail(line_, "trailing characters after value");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  TomlValue value() {
    skip_ws();
    if (pos_ >= text_.size()) fail(line_, "missing value");
    TomlValue v;
    v.line = line_;
    const char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      v.kind = TomlValue::Kind::Arr;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      while (true) {
        v.items.push_back(value());
        skip_ws();
        if (pos_ >= text_.size()) fail(line_, "unterminated array");
        if (text_[pos_] == ',') {
          ++pos_;
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ']') {  // trailing comma
            ++pos_;
            return v;
          }
          continue;
        }
        if (text_[pos_] == ']') {
          ++pos_;
          return v;
        }
        fail(line_, "expected ',' or ']' in array");
      }
    }
    if (c == '"') {
      ++pos_;
      v.kind = TomlValue::Kind::Str;
      while (pos_ < text_.size() && text_[pos_] != '"') v.str.push_back(text_[pos_++]);
      if (pos_ >= text_.size()) fail(line_, "unterminated string");
      ++pos_;
      return v;
    }
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      v.kind = TomlValue::Kind::Bool;
      v.boolean = true;
      return v;
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      v.kind = TomlValue::Kind::Bool;
      v.boolean = false;
      return v;
    }
    size_t end = pos_;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[end])))
      ++end;
    const std::string tok = text_.substr(pos_, end - pos_);
    char* stop = nullptr;
    const double parsed = std::strtod(tok.c_str(), &stop);
    if (stop == nullptr || *stop != '\0' || tok.empty())
      fail(line_, "cannot parse value '" + tok + "'");
    if (!std::isfinite(parsed)) fail(line_, "non-finite number '" + tok + "'");
    v.kind = TomlValue::Kind::Num;
    v.num = parsed;
    pos_ = end;
    return v;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_;
};

int brace_balance(const std::string& s) {
  int bal = 0;
  bool in_str = false;
  for (char c : s) {
    if (c == '"') in_str = !in_str;
    if (in_str) continue;
    if (c == '[') ++bal;
    if (c == ']') --bal;
  }
  return bal;
}

TomlDoc parse_toml(const std::string& text) {
  TomlDoc doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::string table_prefix;       // "" = root, else e.g. "symmetry."
  TomlTable* array_table = nullptr;  // active [[name]] block

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.size() >= 4 && line.compare(0, 2, "[[") == 0) {
      if (line.substr(line.size() - 2) != "]]") fail(lineno, "malformed [[table]] header");
      const std::string name = trim(line.substr(2, line.size() - 4));
      if (!valid_key(name)) fail(lineno, "bad table name '" + name + "'");
      doc.table_arrays[name].push_back({});
      array_table = &doc.table_arrays[name].back();
      table_prefix.clear();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "malformed [table] header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!valid_key(name)) fail(lineno, "bad table name '" + name + "'");
      table_prefix = name + ".";
      array_table = nullptr;
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail(lineno, "bad key '" + key + "'");
    std::string value_text = line.substr(eq + 1);

    // multiline arrays: keep consuming lines until brackets balance
    const int start_line = lineno;
    int bal = brace_balance(value_text);
    while (bal > 0 && std::getline(in, raw)) {
      ++lineno;
      const std::string cont = strip_comment(raw);
      value_text += "\n" + cont;
      bal += brace_balance(cont);
    }
    if (bal > 0) fail(start_line, "unterminated array for key '" + key + "'");

    TomlValue v = ValueParser(trim(value_text), start_line).parse();
    TomlTable& target = array_table != nullptr ? *array_table : doc.root;
    const std::string full = array_table != nullptr ? key : table_prefix + key;
    if (target.count(full) != 0) fail(start_line, "duplicate key '" + key + "'");
    target.emplace(full, std::move(v));
  }
  return doc;
}

const TomlValue* find(const TomlTable& t, const std::string& key) {
  const auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

double as_number(const TomlValue& v, const std::string& key) {
  if (v.kind != TomlValue::Kind::Num) fail(v.line, "field '" + key + "' must be a number");
  return v.num;
}

long long as_integer(const TomlValue& v, const std::string& key) {
  const double x = as_number(v, key);
  if (x != std::floor(x) || std::abs(x) > 9.0e15)
    fail(v.line, "field '" + key + "' must be an integer");
  return static_cast<long long>(x);
}

std::string as_string(const TomlValue& v, const std::string& key) {
  if (v.kind != TomlValue::Kind::Str) fail(v.line, "field '" + key + "' must be a string");
  return v.str;
}

const std::vector<TomlValue>& as_array(const TomlValue& v, const std::string& key) {
  if (v.kind != TomlValue::Kind::Arr) fail(v.line, "field '" + key + "' must be an array");
  return v.items;
}

// Row-major list of [re, im] pairs forming a square matrix.
Matrix as_matrix(const TomlValue& v, const std::string& key) {
  const auto& items = as_array(v, key);
  const long long entries = static_cast<long long>(items.size());
  const long long dim = static_cast<long long>(std::llround(std::sqrt(double(entries))));
  if (entries == 0 || dim * dim != entries)
    fail(v.line, "field '" + key + "' needs a square count of [re, im] pairs, got " +
                     std::to_string(entries));
  Matrix m(dim, dim);
  for (long long k = 0; k < entries; ++k) {
    const auto& pair = as_array(items[static_cast<size_t>(k)], key);
    if (pair.size() != 2)
      fail(items[static_cast<size_t>(k)].line, "entry " + std::to_string(k) + " of '" + key +
                                                   "' must be an [re, im] pair");
    m(k / dim, k % dim) = Cplx(as_number(pair[0], key), as_number(pair[1], key));
  }
  return m;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  const TomlDoc doc = parse_toml(text);
  ExperimentConfig cfg;
  cfg.source_text = text;

  static const std::vector<std::string> known = {
      "preset", "J",       "mu",   "delta", "h",    "n_range", "eps",
      "buffers", "suites", "seed", "out",   "max_dim", "jobs"};
  static const std::vector<std::string> known_symmetry = {"kind", "d", "charges", "elements",
                                                          "generators"};
  for (const auto& [key, value] : doc.root) {
    const size_t dot = key.find('.');
    if (dot == std::string::npos) {
      bool ok = false;
      for (const std::string& k : known) ok = ok || k == key;
      if (!ok) fail(value.line, "unknown field '" + key + "'");
      continue;
    }
    const std::string table = key.substr(0, dot);
    const std::string sub = key.substr(dot + 1);
    if (table == "tolerance") continue;  // any column tag is a valid override key
    if (table == "symmetry") {
      bool ok = false;
      for (const std::string& k : known_symmetry) ok = ok || k == sub;
      if (!ok) fail(value.line, "unknown field 'symmetry." + sub + "'");
      continue;
    }
    fail(value.line, "unknown table '" + table + "'");
  }

  if (const TomlValue* v = find(doc.root, "preset")) cfg.preset = as_string(*v, "preset");
  if (const TomlValue* v = find(doc.root, "J")) cfg.J = as_number(*v, "J");
  if (const TomlValue* v = find(doc.root, "mu")) cfg.mu = as_number(*v, "mu");
  if (const TomlValue* v = find(doc.root, "delta")) cfg.delta = as_number(*v, "delta");
  if (const TomlValue* v = find(doc.root, "h")) cfg.h = as_matrix(*v, "h");

  if (const TomlValue* v = find(doc.root, "n_range")) {
    const auto& arr = as_array(*v, "n_range");
    if (arr.size() != 2) fail(v->line, "field 'n_range' must be [lo, hi]");
    cfg.n_lo = static_cast<int>(as_integer(arr[0], "n_range"));
    cfg.n_hi = static_cast<int>(as_integer(arr[1], "n_range"));
    if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo)
      fail(v->line, "field 'n_range' must be nonempty ascending");
  }
  if (const TomlValue* v = find(doc.root, "eps")) {
    cfg.eps.clear();
    for (const TomlValue& e : as_array(*v, "eps")) {
      const double x = as_number(e, "eps");
      if (!(x > 0.0 && x < 1.0)) fail(e.line, "eps entries must lie in (0,1)");
      cfg.eps.push_back(x);
    }
    if (cfg.eps.empty()) fail(v->line, "field 'eps' must not be empty");
  }
  if (const TomlValue* v = find(doc.root, "buffers")) {
    cfg.buffers.clear();
    for (const TomlValue& e : as_array(*v, "buffers")) {
      const long long b = as_integer(e, "buffers");
      if (b < 1) fail(e.line, "buffer entries must be positive");
      cfg.buffers.push_back(static_cast<int>(b));
    }
    if (cfg.buffers.empty()) fail(v->line, "field 'buffers' must not be empty");
  }
  if (const TomlValue* v = find(doc.root, "suites")) {
    cfg.suites.clear();
    for (const TomlValue& e : as_array(*v, "suites"))
      cfg.suites.push_back(as_string(e, "suites"));
  }
  if (const TomlValue* v = find(doc.root, "seed")) {
    const long long s = as_integer(*v, "seed");
    if (s < 0) fail(v->line, "field 'seed' must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.seed_set = true;
  }
  if (const TomlValue* v = find(doc.root, "out")) cfg.out_dir = as_string(*v, "out");
  if (const TomlValue* v = find(doc.root, "max_dim")) {
    const long long m = as_integer(*v, "max_dim");
    if (m < 2) fail(v->line, "field 'max_dim' must be at least 2");
    cfg.max_dim = static_cast<int>(m);
  }
  if (const TomlValue* v = find(doc.root, "jobs")) {
    const long long j = as_integer(*v, "jobs");
    if (j < 1) fail(v->line, "field 'jobs' must be positive");
    cfg.jobs = static_cast<int>(j);
  }

  if (const TomlValue* v = find(doc.root, "symmetry.kind"))
    cfg.symmetry_kind = as_string(*v, "symmetry.kind");
  if (const TomlValue* v = find(doc.root, "symmetry.d"))
    cfg.d = static_cast<int>(as_integer(*v, "symmetry.d"));
  if (const TomlValue* v = find(doc.root, "symmetry.charges")) {
    for (const TomlValue& e : as_array(*v, "symmetry.charges"))
      cfg.charges.push_back(static_cast<int>(as_integer(e, "symmetry.charges")));
  }
  if (const TomlValue* v = find(doc.root, "symmetry.elements")) {
    for (const TomlValue& e : as_array(*v, "symmetry.elements"))
      cfg.group_elements.push_back(as_matrix(e, "symmetry.elements"));
  }
  if (const TomlValue* v = find(doc.root, "symmetry.generators")) {
    for (const TomlValue& e : as_array(*v, "symmetry.generators"))
      cfg.lie_generators.push_back(as_matrix(e, "symmetry.generators"));
  }

  const auto terms = doc.table_arrays.find("term");
  if (terms != doc.table_arrays.end()) {
    for (const TomlTable& t : terms->second) {
      RawTerm raw;
      const TomlValue* off = find(t, "offsets");
      const TomlValue* mat = find(t, "matrix");
      if (off == nullptr || mat == nullptr)
        throw ConfigError("config: every [[term]] needs 'offsets' and 'matrix'");
      for (const auto& [key, value] : t)
        if (key != "offsets" && key != "matrix")
          fail(value.line, "unknown field '" + key +
                               "' in [[term]]; root keys must come before table blocks");
      for (const TomlValue& e : as_array(*off, "offsets"))
        raw.offsets.push_back(static_cast<int>(as_integer(e, "offsets")));
      raw.op = as_matrix(*mat, "matrix");
      cfg.raw_terms.push_back(std::move(raw));
    }
  }

  for (const auto& [key, value] : doc.root) {
    if (key.rfind("tolerance.", 0) == 0)
      cfg.tolerance_overrides[key.substr(10)] = as_number(value, key);
  }

  if (!cfg.preset.empty() && (!cfg.raw_terms.empty() || !cfg.symmetry_kind.empty()))
    throw ConfigError("config: field 'preset' excludes [symmetry] and [[term]] blocks");
  if (cfg.preset.empty() && cfg.symmetry_kind.empty())
    throw ConfigError("config: field 'preset' or a [symmetry] table is required");

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::uint64_t config_hash(const std::string& source_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : source_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gaugelab
