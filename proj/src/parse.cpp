#include "plsf/parse.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include <json.hpp>

namespace plsf {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  BigInt value;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_];
        advance();
      }
      if (pos_ < src_.size() && src_[pos_] == '.')
        throw ParseError("decimal literals are not allowed in polynomial expressions", line_, col_);
      t.kind = Tok::Number;
      t.text = digits;
      t.value = BigInt(digits);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        id += src_[pos_];
        advance();
      }
      t.kind = Tok::Ident;
      t.text = id;
      return t;
    }
    advance();
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '^': t.kind = Tok::Caret; break;
      case '/': t.kind = Tok::Slash; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
    t.text = std::string(1, c);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class ExprParser {
 public:
  ExprParser(const std::string& src, const std::vector<std::string>& vars)
      : lexer_(src), vars_(vars) {
    cur_ = lexer_.next();
  }

  Polynomial parse() {
    Polynomial p = expr();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  int dim() const { return static_cast<int>(vars_.size()); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, cur_.line, cur_.col);
  }

  void bump() { cur_ = lexer_.next(); }

  void expect(Tok k, const std::string& what) {
    if (cur_.kind != k) fail("expected " + what + ", found '" + describe(cur_) + "'");
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : t.text;
  }

  Polynomial expr() {
    bool negate = false;
    if (cur_.kind == Tok::Minus) {
      negate = true;
      bump();
    } else if (cur_.kind == Tok::Plus) {
      bump();
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      bump();
      Polynomial t = term();
      if (minus)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (cur_.kind == Tok::Star) {
      bump();
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (cur_.kind != Tok::Caret) return base;
    bump();
    if (cur_.kind == Tok::Minus) fail("negative exponents are not allowed");
    expect(Tok::Number, "a nonnegative integer exponent");
    BigInt e = cur_.value;
    bump();
    if (cur_.kind == Tok::Slash) fail("fractional exponents are not allowed");
    if (cur_.kind == Tok::Caret) fail("chained '^' is not allowed; parenthesize the base");
    if (e > 64) fail("exponent too large");
    Polynomial acc = Polynomial::constant(dim(), Rational(1));
    for (BigInt i = 0; i < e; ++i) acc *= base;
    return acc;
  }

  Polynomial primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        BigInt num = cur_.value;
        bump();
        if (cur_.kind == Tok::Slash) {
          bump();
          expect(Tok::Number, "a denominator");
          BigInt den = cur_.value;
          if (den == 0) fail("zero denominator");
          bump();
          return Polynomial::constant(dim(), Rational(num, den));
        }
        return Polynomial::constant(dim(), Rational(num));
      }
      case Tok::Ident: {
        std::string id = cur_.text;
        bump();
        if (id == "eps") return Polynomial::eps(dim());
        auto it = std::find(vars_.begin(), vars_.end(), id);
        if (it == vars_.end()) fail("unknown identifier " + id);
        return Polynomial::variable(dim(), static_cast<int>(it - vars_.begin()));
      }
      case Tok::LParen: {
        bump();
        Polynomial p = expr();
        expect(Tok::RParen, "')'");
        bump();
        return p;
      }
      default:
        fail("expected a number, identifier or '(', found '" + describe(cur_) + "'");
    }
  }

  Lexer lexer_;
  const std::vector<std::string>& vars_;
  Token cur_;
};

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

using Json = nlohmann::json;

const Json& require_field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field: " + key);
  return *it;
}

}  // namespace

Polynomial parse_polynomial(const std::string& src, const std::vector<std::string>& vars) {
  return ExprParser(src, vars).parse();
}

SystemSpec parse_system(const std::string& file_contents) {
  Json j;
  try {
    j = Json::parse(file_contents);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("system file must be a JSON object");

  const Json& jvars = require_field(j, "variables");
  if (!jvars.is_array() || jvars.size() < 2)
    throw ParseError("variables must be an array of at least two names");
  std::vector<std::string> declared;
  for (const auto& v : jvars) {
    if (!v.is_string()) throw ParseError("variables must be strings");
    std::string name = v.get<std::string>();
    if (!valid_identifier(name)) throw ParseError("invalid variable name: " + name);
    if (name == "eps") throw ParseError("'eps' is reserved and cannot be a variable");
    if (std::find(declared.begin(), declared.end(), name) != declared.end())
      throw ParseError("duplicate variable: " + name);
    declared.push_back(name);
  }
  const int n = static_cast<int>(declared.size());

  std::string fast = require_field(j, "fast").get<std::string>();
  auto fast_it = std::find(declared.begin(), declared.end(), fast);
  if (fast_it == declared.end()) throw ParseError("fast variable " + fast + " is not declared");
  const size_t fast_pos = static_cast<size_t>(fast_it - declared.begin());

  const Json& jweights = require_field(j, "weights");
  if (!jweights.is_array() || static_cast<int>(jweights.size()) != n)
    throw ParseError("weight count mismatch");
  std::vector<int> weights_declared;
  for (const auto& wv : jweights) {
    if (!wv.is_number_integer() || wv.get<long long>() < 1)
      throw ParseError("weights must be positive integers");
    weights_declared.push_back(wv.get<int>());
  }

  // Reorder to the internal fast-first convention.
  std::vector<size_t> order;
  order.push_back(fast_pos);
  for (size_t i = 0; i < declared.size(); ++i)
    if (i != fast_pos) order.push_back(i);

  std::vector<std::string> vars;
  std::vector<int> weights;
  for (size_t i : order) {
    vars.push_back(declared[i]);
    weights.push_back(weights_declared[i]);
  }
  if (vars[0] != fast) throw ParseError("internal error: fast variable not first after reordering");

  Polynomial P = parse_polynomial(require_field(j, "P").get<std::string>(), vars);

  const Json& jq = require_field(j, "Q");
  if (!jq.is_object()) throw ParseError("Q must be an object mapping slow variables to expressions");
  std::vector<Polynomial> Q;
  for (size_t k = 1; k < vars.size(); ++k) {
    auto it = jq.find(vars[k]);
    if (it == jq.end()) throw ParseError("missing slow equation for " + vars[k]);
    Q.push_back(parse_polynomial(it->get<std::string>(), vars));
  }
  for (auto it = jq.begin(); it != jq.end(); ++it) {
    if (it.key() == fast) throw ParseError("Q must not contain the fast variable " + fast);
    if (std::find(vars.begin() + 1, vars.end(), it.key()) == vars.end())
      throw ParseError("Q refers to undeclared variable " + it.key());
  }

  SystemSpec spec;
  spec.sys = SlowFastSystem(vars, std::move(P), std::move(Q));
  spec.weights = WeightVector(weights);

  const Json& jeps = require_field(j, "eps");
  if (!jeps.is_array()) throw ParseError("eps must be an array of numbers");
  for (const auto& e : jeps) {
    if (!e.is_number()) throw ParseError("eps values must be numbers");
    spec.eps_values.push_back(e.get<double>());
  }

  if (j.contains("initial_conditions")) {
    const Json& jic = j["initial_conditions"];
    if (!jic.is_array()) throw ParseError("initial_conditions must be an array of points");
    for (const auto& pt : jic) {
      if (!pt.is_array() || static_cast<int>(pt.size()) != n)
        throw ParseError("each initial condition must have one value per variable");
      std::vector<double> x;
      for (size_t i : order) x.push_back(pt[i].get<double>());
      spec.initial_conditions.push_back(std::move(x));
    }
  }

  if (j.contains("integration")) {
    const Json& ji = j["integration"];
    if (!ji.is_object()) throw ParseError("integration must be an object");
    if (ji.contains("t_max")) spec.integration.t_max = ji["t_max"].get<double>();
    if (ji.contains("rel_tol")) spec.integration.rel_tol = ji["rel_tol"].get<double>();
    if (ji.contains("abs_tol")) spec.integration.abs_tol = ji["abs_tol"].get<double>();
    if (ji.contains("max_steps")) spec.integration.max_steps = ji["max_steps"].get<long>();
    if (spec.integration.rel_tol <= 0 || spec.integration.abs_tol <= 0)
      throw ParseError("integration tolerances must be positive");
  }

  if (j.contains("options")) {
    const Json& jo = j["options"];
    if (!jo.is_object()) throw ParseError("options must be an object of booleans");
    for (auto it = jo.begin(); it != jo.end(); ++it)
      spec.analysis_options[it.key()] = it->get<bool>();
  }

  return spec;
}

}  // namespace plsf
