#include "hblab/parse.hpp"

#include <cctype>
#include <cstdlib>

#include <json.hpp>

#include "hblab/error.hpp"

namespace hblab {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

struct Rat {
  Poly num;
  Poly den = Poly::constant(1.0);
};

Rat operator+(const Rat& a, const Rat& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rat operator-(const Rat& a, const Rat& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rat operator*(const Rat& a, const Rat& b) { return {a.num * b.num, a.den * b.den}; }
Rat operator/(const Rat& a, const Rat& b) {
  if (b.num.is_zero()) fail("division by zero");
  return {a.num * b.den, a.den * b.num};
}

class Infix {
 public:
  explicit Infix(std::string_view s) : s_(s) {}

  Rat parse() {
    Rat r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "' at position " + std::to_string(pos_));
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'z' || c == 'i' || c == '(' || c == 's';
  }

  Rat expr() {
    Rat r = term();
    for (;;) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }
  Rat term() {
    Rat r = unary();
    for (;;) {
      if (accept('*')) r = r * unary();
      else if (accept('/')) r = r / unary();
      else if (starts_primary()) r = r * power();
      else return r;
    }
  }
  Rat unary() {
    if (accept('-')) {
      Rat r = unary();
      return {-r.num, r.den};
    }
    if (accept('+')) return unary();
    return power();
  }
  Rat power() {
    Rat base = primary();
    if (!accept('^')) return base;
    skip();
    const bool negative = accept('-');
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    if (end == pos_ || (end < s_.size() && (s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E')))
      fail("exponent must be an integer");
    const int k = std::atoi(std::string(s_.substr(pos_, end - pos_)).c_str());
    pos_ = end;
    Rat r;
    r.num = Poly::constant(1.0);
    for (int j = 0; j < k; ++j) r = r * base;
    if (!negative) return r;
    if (r.num.is_zero()) fail("division by zero");
    return {r.den, r.num};
  }
  Rat primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Rat r = expr();
      if (!accept(')')) fail("missing ')'");
      return r;
    }
    if (c == 'z') {
      ++pos_;
      return {Poly{0.0, 1.0}};
    }
    if (c == 'i') {
      ++pos_;
      return {Poly::constant(cplx(0.0, 1.0))};
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("sqrt needs '('");
      Rat r = expr();
      if (!accept(')')) fail("missing ')'");
      if (r.num.degree() > 0 || r.den.degree() > 0) fail("sqrt takes a constant argument");
      return {Poly::constant(std::sqrt(r.num[0] / r.den[0]))};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return {Poly::constant(v)};
    }
    fail("unexpected '" + std::string(1, c) + "' at position " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

cplx json_complex(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  fail("complex value must be a number, a string or [re, im]");
}

Poly json_poly(const Json& j) {
  if (j.is_object()) {
    if (j.value("type", "poly") != "poly" || !j.contains("coeffs")) fail("expected a polynomial object");
    return json_poly(j["coeffs"]);
  }
  if (j.is_string()) {
    const Rat r = Infix(j.get<std::string>()).parse();
    if (r.den.degree() > 0) fail("expected a polynomial");
    return r.num * (1.0 / r.den[0]);
  }
  if (!j.is_array()) fail("coefficients must be an array");
  std::vector<cplx> c;
  for (const auto& x : j) c.push_back(json_complex(x));
  return Poly(std::move(c));
}

Function from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) fail("function object needs a \"type\" field");
  const std::string type = j["type"].get<std::string>();
  if (type == "poly") return Function::polynomial(json_poly(j));
  if (type == "rational") {
    if (!j.contains("num") || !j.contains("den")) fail("rational needs \"num\" and \"den\"");
    const Poly den = json_poly(j["den"]);
    if (den.is_zero()) fail("zero denominator");
    return Function::rational(json_poly(j["num"]), den);
  }
  if (type == "blaschke") {
    std::vector<cplx> zeros;
    for (const auto& z : j.value("zeros", Json::array())) zeros.push_back(json_complex(z));
    const cplx phase = j.contains("phase") ? json_complex(j["phase"]) : cplx(1.0);
    return Function::blaschke(std::move(zeros), phase);
  }
  fail("unknown function type '" + type + "'");
}

}  // namespace

std::pair<Poly, Poly> parse_rational(std::string_view text) {
  Rat r = Infix(text).parse();
  if (r.den.is_zero()) fail("zero denominator");
  return {std::move(r.num), std::move(r.den)};
}

Function parse_function(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      fail(std::string("malformed function object: ") + e.what());
    }
    try {
      return from_json(j);
    } catch (const Json::exception& e) {
      fail(std::string("malformed function object: ") + e.what());
    }
  }
  auto [num, den] = parse_rational(text);
  return Function::rational(std::move(num), std::move(den));
}

cplx parse_complex(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      fail(std::string("malformed complex value: ") + e.what());
    }
    return json_complex(j);
  }
  const auto [num, den] = parse_rational(text);
  if (num.degree() > 0 || den.degree() > 0) fail("expected a constant");
  return num[0] / den[0];
}

}  // namespace hblab
