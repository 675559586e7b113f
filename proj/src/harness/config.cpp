#include "siolab/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "siolab/error.hpp"

namespace siolab::harness {

namespace {

using nlohmann::json;

class ValueParser {
 public:
  ValueParser(std::string s, int line) : s_(std::move(s)), line_(line) {}

  json parse_all() {
    json v = value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("config line " + std::to_string(line_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string quoted() {
    const char q = s_[pos_++];
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != q) {
      char c = s_[pos_++];
      if (c == '\\' && q == '"') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

 public:
  std::string key() {
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) return quoted();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{key()};
    while (eat('.')) parts.push_back(key());
    return parts;
  }

  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }

  json value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return quoted();
    if (c == '[') {
      ++pos_;
      json arr = json::array();
      if (eat(']')) return arr;
      for (;;) {
        arr.push_back(value());
        if (eat(']')) return arr;
        if (!eat(',')) fail("expected ',' or ']' in array");
        if (eat(']')) return arr;  // trailing comma
      }
    }
    if (c == '{') {
      ++pos_;
      json obj = json::object();
      if (eat('}')) return obj;
      for (;;) {
        const auto path = dotted_key();
        if (!eat('=')) fail("expected '=' in inline table");
        assign(obj, path, value());
        if (eat('}')) return obj;
        if (!eat(',')) fail("expected ',' or '}' in inline table");
      }
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != ',' &&
           s_[pos_] != ']' && s_[pos_] != '}' && s_[pos_] != '#')
      ++pos_;
    const std::string word = s_.substr(start, pos_ - start);
    if (word == "true") return true;
    if (word == "false") return false;
    if (word == "inf" || word == "+inf") return "inf";
    std::string digits;
    for (char ch : word)
      if (ch != '_') digits += ch;
    if (!digits.empty()) {
      char* end = nullptr;
      const bool integral = digits.find_first_of(".eE") == std::string::npos;
      if (integral) {
        const long long v = std::strtoll(digits.c_str(), &end, 10);
        if (end && *end == '\0') return v;
      }
      const double d = std::strtod(digits.c_str(), &end);
      if (end && *end == '\0') return d;
    }
    fail("cannot parse value '" + word + "'");
  }

  static void assign(json& root, const std::vector<std::string>& path, json v) {
    json* node = &root;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      json& next = (*node)[path[k]];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) throw SpecError("key '" + path[k] + "' is not a table");
      node = &next;
    }
    (*node)[path.back()] = std::move(v);
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
  int line_;
};

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool in_str = false;
  char q = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_str) {
      if (c == '\\' && q == '"') ++i;
      else if (c == q) in_str = false;
      continue;
    }
    if (c == '#') break;
    if (c == '"' || c == '\'') in_str = true, q = c;
    else if (c == '[' || c == '{') ++depth;
    else if (c == ']' || c == '}') --depth;
  }
  return depth;
}

}  // namespace

json parse_config_text(const std::string& text) {
  json root = json::object();
  std::vector<std::string> table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const int start_line = lineno;
    std::string stmt = line;
    std::size_t a = stmt.find_first_not_of(" \t\r");
    if (a == std::string::npos || stmt[a] == '#') continue;
    if (stmt[a] == '[' && stmt.find('=') == std::string::npos) {
      const std::size_t b = stmt.find(']', a);
      if (b == std::string::npos) throw SpecError("config line " + std::to_string(lineno) + ": unterminated table header");
      const std::string inner = stmt.substr(a + 1, b - a - 1);
      ValueParser p(inner, lineno);
      table = p.dotted_key();
      if (!p.at_end()) throw SpecError("config line " + std::to_string(lineno) + ": bad table header");
      json* node = &root;
      for (const auto& k : table) {
        json& next = (*node)[k];
        if (next.is_null()) next = json::object();
        node = &next;
      }
      continue;
    }
    while (bracket_balance(stmt) > 0) {
      std::string more;
      if (!std::getline(in, more)) throw SpecError("config line " + std::to_string(start_line) + ": unterminated value");
      ++lineno;
      stmt += "\n" + more;
    }
    const std::size_t eq = [&] {
      bool in_str = false;
      char q = 0;
      for (std::size_t i = 0; i < stmt.size(); ++i) {
        const char c = stmt[i];
        if (in_str) {
          if (c == q) in_str = false;
        } else if (c == '"' || c == '\'') {
          in_str = true, q = c;
        } else if (c == '=') {
          return i;
        }
      }
      return std::string::npos;
    }();
    if (eq == std::string::npos) throw SpecError("config line " + std::to_string(start_line) + ": expected key = value");
    const std::string lhs = stmt.substr(0, eq), rhs = stmt.substr(eq + 1);
    ValueParser kp(lhs, start_line);
    auto path = kp.dotted_key();
    if (!kp.at_end()) throw SpecError("config line " + std::to_string(start_line) + ": bad key");
    ValueParser vp(rhs, start_line);
    std::vector<std::string> full = table;
    full.insert(full.end(), path.begin(), path.end());
    ValueParser::assign(root, full, vp.parse_all());
  }
  return root;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(json& cfg, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw SpecError("override must look like path.to.key=value");
  ValueParser kp(assignment.substr(0, eq), 0);
  const auto path = kp.dotted_key();
  if (!kp.at_end()) throw SpecError("bad override key '" + assignment.substr(0, eq) + "'");
  const std::string rhs = assignment.substr(eq + 1);
  json v;
  try {
    ValueParser vp(rhs, 0);
    v = vp.parse_all();
  } catch (const SpecError&) {
    v = rhs;
  }
  ValueParser::assign(cfg, path, std::move(v));
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "t1_check",          "jump_check",          "involution_check", "reproducing_check", "single_layer_identity",
      "riesz_characterization", "growth_analysis", "holder_fixtures",  "ahlfors_profile",   "hourglass"};
  return names;
}

namespace {

// Operator kinds each experiment accepts; empty = no operator.
const std::map<std::string, std::set<std::string>>& operator_table() {
  static const std::map<std::string, std::set<std::string>> t = {
      {"t1_check", {"double_layer", "cauchy_clifford"}},
      {"jump_check", {"double_layer", "cauchy_clifford"}},
      {"involution_check", {"cauchy_clifford"}},
      {"reproducing_check", {"cauchy_clifford"}},
      {"single_layer_identity", {"single_layer"}},
      {"riesz_characterization", {"riesz"}},
      {"growth_analysis", {}},
      {"holder_fixtures", {}},
      {"ahlfors_profile", {}},
      {"hourglass", {}}};
  return t;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw SpecError("config must be a table");
  static const std::set<std::string> known = {"experiment", "domain", "omega",      "operator",
                                              "resolutions", "output_dir", "seed", "params"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw SpecError("unknown config key '" + k + "'");
  ExperimentConfig c;
  c.raw = j;
  if (!j.contains("experiment") || !j["experiment"].is_string()) throw SpecError("config needs experiment = \"<name>\"");
  c.experiment = j["experiment"].get<std::string>();
  const auto& table = operator_table();
  const auto it = table.find(c.experiment);
  if (it == table.end()) throw SpecError("unknown experiment '" + c.experiment + "'");
  if (j.contains("domain")) {
    if (!j["domain"].is_object()) throw SpecError("domain must be a table");
    c.domain = j["domain"];
  }
  if (j.contains("omega")) {
    if (!j["omega"].is_object()) throw SpecError("omega must be a table");
    c.omega = j["omega"];
  }
  if (j.contains("operator")) {
    if (!j["operator"].is_object()) throw SpecError("operator must be a table");
    c.op = j["operator"];
    const std::string kind = c.op.value("kind", std::string());
    if (it->second.empty())
      throw SpecError("experiment '" + c.experiment + "' takes no operator");
    if (!it->second.count(kind))
      throw SpecError("operator kind '" + kind + "' is not valid for experiment '" + c.experiment + "'");
  }
  if (j.contains("resolutions")) {
    if (!j["resolutions"].is_array()) throw SpecError("resolutions must be an array");
    for (const auto& v : j["resolutions"]) {
      if (!v.is_number_integer()) throw SpecError("resolutions must be integers");
      c.resolutions.push_back(v.get<int>());
    }
    for (std::size_t k = 0; k < c.resolutions.size(); ++k) {
      if (c.resolutions[k] < 16) throw SpecError("resolutions must be at least 16");
      if (k > 0 && c.resolutions[k] <= c.resolutions[k - 1]) throw SpecError("resolutions must be strictly increasing");
    }
  }
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) throw SpecError("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw SpecError("params must be a table");
    c.params = j["params"];
  }
  return c;
}

}  // namespace siolab::harness
