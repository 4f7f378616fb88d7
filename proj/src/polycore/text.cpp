#include <cctype>
#include <sstream>

#include "invariety/error.hpp"
#include "invariety/polycore/multipoly.hpp"
#include "invariety/polycore/serialize.hpp"

namespace invariety::poly {

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : f.terms()) {
    Integer mag = abs(t.coef);
    if (first) {
      if (t.coef < 0) out << '-';
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || t.mono.is_one()) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < f.symbol_count(); ++v) {
      unsigned e = t.mono[v];
      if (e == 0) continue;
      if (wrote) out << '*';
      out << f.symbols()[v];
      if (e > 1) out << '^' << e;
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Symbols& symbols) : text_(text), zero_(symbols) {}

  MultiPoly run() {
    MultiPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expression() {
    MultiPoly acc = MultiPoly::constant(zero_, 0);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MultiPoly::constant(zero_, Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (!zero_.has_symbol(name)) fail("unknown symbol '" + name + "'");
      return MultiPoly::variable(zero_, name);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  MultiPoly zero_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse(std::string_view text, const Symbols& symbols) { return Parser(text, symbols).run(); }

nlohmann::json to_json(const MultiPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    std::vector<unsigned> exp(f.symbol_count());
    for (std::size_t v = 0; v < exp.size(); ++v) exp[v] = t.mono[v];
    terms.push_back({{"exp", exp}, {"coef", t.coef.get_str()}});
  }
  return {{"symbols", f.symbols()}, {"terms", terms}};
}

MultiPoly from_json(const nlohmann::json& j) {
  try {
    MultiPoly zero(j.at("symbols").get<Symbols>());
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      auto exp = t.at("exp").get<std::vector<unsigned>>();
      if (exp.size() != zero.symbol_count()) throw ParseError("exponent vector length does not match symbols");
      Integer coef;
      if (coef.set_str(t.at("coef").get<std::string>(), 10) != 0) throw ParseError("bad coefficient");
      if (coef == 0) throw ParseError("zero coefficient stored");
      terms.push_back({Monomial(exp), coef});
    }
    MultiPoly out(zero.symbols_ptr(), terms);
    if (out.size() != terms.size()) throw ParseError("duplicate exponent vectors");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace invariety::poly
