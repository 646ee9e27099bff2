#include "confgate/harness/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace confgate::harness {

TomlValue TomlValue::str(std::string v) {
  TomlValue t;
  t.kind_ = Kind::kString;
  t.s_ = std::move(v);
  return t;
}

TomlValue TomlValue::integer(std::int64_t v) {
  TomlValue t;
  t.kind_ = Kind::kInt;
  t.i_ = v;
  return t;
}

TomlValue TomlValue::real(double v) {
  TomlValue t;
  t.kind_ = Kind::kFloat;
  t.f_ = v;
  return t;
}

TomlValue TomlValue::boolean(bool v) {
  TomlValue t;
  t.kind_ = Kind::kBool;
  t.b_ = v;
  return t;
}

TomlValue TomlValue::array(std::vector<TomlValue> v) {
  TomlValue t;
  t.kind_ = Kind::kArray;
  t.arr_ = std::move(v);
  return t;
}

const std::string& TomlValue::as_string() const {
  if (kind_ != Kind::kString) throw TomlError("value is not a string");
  return s_;
}

std::int64_t TomlValue::as_int() const {
  if (kind_ != Kind::kInt) throw TomlError("value is not an integer");
  return i_;
}

double TomlValue::as_float() const {
  if (kind_ == Kind::kFloat) return f_;
  if (kind_ == Kind::kInt) return static_cast<double>(i_);
  throw TomlError("value is not a number");
}

bool TomlValue::as_bool() const {
  if (kind_ != Kind::kBool) throw TomlError("value is not a boolean");
  return b_;
}

const std::vector<TomlValue>& TomlValue::as_array() const {
  if (kind_ != Kind::kArray) throw TomlError("value is not an array");
  return arr_;
}

bool TomlDocument::contains(const std::string& key) const {
  return entries_.count(key) != 0;
}

const TomlValue& TomlDocument::at(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw TomlError("missing config key: " + key);
  return it->second;
}

std::string TomlDocument::get_string(const std::string& key,
                                     const std::string& dflt) const {
  return contains(key) ? at(key).as_string() : dflt;
}

std::int64_t TomlDocument::get_int(const std::string& key,
                                   std::int64_t dflt) const {
  return contains(key) ? at(key).as_int() : dflt;
}

double TomlDocument::get_float(const std::string& key, double dflt) const {
  return contains(key) ? at(key).as_float() : dflt;
}

bool TomlDocument::get_bool(const std::string& key, bool dflt) const {
  return contains(key) ? at(key).as_bool() : dflt;
}

std::vector<double> TomlDocument::get_float_array(const std::string& key) const {
  std::vector<double> out;
  for (const TomlValue& v : at(key).as_array()) out.push_back(v.as_float());
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw TomlError("line " + std::to_string(line) + ": " + msg);
  }
};

std::string parse_quoted(Cursor& c) {
  ++c.pos;  // opening quote
  std::string out;
  while (!c.done() && c.peek() != '"') {
    char ch = c.s[c.pos++];
    if (ch == '\\') {
      if (c.done()) c.fail("dangling escape");
      char esc = c.s[c.pos++];
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: c.fail(std::string("unsupported escape \\") + esc);
      }
    } else {
      out += ch;
    }
  }
  if (c.done()) c.fail("unterminated string");
  ++c.pos;  // closing quote
  return out;
}

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
  ++c.pos;  // '['
  std::vector<TomlValue> items;
  c.skip_ws();
  if (!c.done() && c.peek() == ']') {
    ++c.pos;
    return TomlValue::array(std::move(items));
  }
  while (true) {
    c.skip_ws();
    items.push_back(parse_value(c));
    c.skip_ws();
    if (c.done()) c.fail("unterminated array (arrays must be single-line)");
    char ch = c.s[c.pos++];
    if (ch == ']') break;
    if (ch != ',') c.fail("expected ',' or ']' in array");
  }
  return TomlValue::array(std::move(items));
}

TomlValue parse_scalar_token(Cursor& c) {
  std::size_t start = c.pos;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == ',' || ch == ']' || ch == '#' || ch == ' ' || ch == '\t') break;
    ++c.pos;
  }
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok.empty()) c.fail("expected a value");
  if (tok == "true") return TomlValue::boolean(true);
  if (tok == "false") return TomlValue::boolean(false);

  bool looks_float = tok.find('.') != std::string::npos ||
                     tok.find('e') != std::string::npos ||
                     tok.find('E') != std::string::npos ||
                     tok == "inf" || tok == "nan";
  try {
    std::size_t used = 0;
    if (looks_float) {
      double v = std::stod(tok, &used);
      if (used != tok.size()) c.fail("malformed number: " + tok);
      return TomlValue::real(v);
    }
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) c.fail("malformed number: " + tok);
    return TomlValue::integer(v);
  } catch (const std::logic_error&) {
    c.fail("malformed value: " + tok);
  }
}

TomlValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) c.fail("expected a value");
  char ch = c.peek();
  if (ch == '"') return TomlValue::str(parse_quoted(c));
  if (ch == '[') return parse_array(c);
  return parse_scalar_token(c);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char ch : k)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' &&
        ch != '-' && ch != '.')
      return false;
  return true;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

TomlDocument parse_toml(const std::string& text) {
  TomlDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line[0] == '[') {
      std::size_t close = line.find(']');
      if (close == std::string::npos)
        throw TomlError("line " + std::to_string(line_no) +
                        ": unterminated section header");
      section = trim(line.substr(1, close - 1));
      if (!valid_key(section))
        throw TomlError("line " + std::to_string(line_no) +
                        ": bad section name '" + section + "'");
      std::string rest = trim(line.substr(close + 1));
      if (!rest.empty() && rest[0] != '#')
        throw TomlError("line " + std::to_string(line_no) +
                        ": trailing characters after section header");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw TomlError("line " + std::to_string(line_no) +
                      ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (!valid_key(key))
      throw TomlError("line " + std::to_string(line_no) + ": bad key '" + key +
                      "'");

    std::string rhs = line.substr(eq + 1);
    Cursor c{rhs, 0, line_no};
    TomlValue value = parse_value(c);
    c.skip_ws();
    if (!c.done() && c.peek() != '#')
      c.fail("trailing characters after value");

    std::string full = section.empty() ? key : section + "." + key;
    if (doc.entries().count(full))
      throw TomlError("line " + std::to_string(line_no) + ": duplicate key '" +
                      full + "'");
    doc.entries().emplace(full, std::move(value));
  }
  return doc;
}

TomlDocument parse_toml_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw TomlError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_toml(buf.str());
  } catch (const TomlError& e) {
    throw TomlError(path.string() + ": " + e.what());
  }
}

}  // namespace confgate::harness
