#include "invariety/polycore/multipoly.hpp"

#include <algorithm>
#include <unordered_map>

#include "invariety/error.hpp"

namespace invariety::poly {

namespace {

const std::shared_ptr<const Symbols>& empty_symbols() {
  static const auto empty = std::make_shared<const Symbols>();
  return empty;
}

void sort_terms(std::vector<MultiPoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const MultiPoly::Term& a, const MultiPoly::Term& b) { return grlex_less(b.mono, a.mono); });
}

using Accumulator = std::unordered_map<Monomial, Integer, MonomialHash>;

std::vector<MultiPoly::Term> drain(Accumulator& acc) {
  std::vector<MultiPoly::Term> out;
  out.reserve(acc.size());
  for (auto& [mono, coef] : acc) {
    if (coef != 0) out.push_back({mono, std::move(coef)});
  }
  sort_terms(out);
  return out;
}

}  // namespace

MultiPoly::MultiPoly() : symbols_(empty_symbols()) {}

MultiPoly::MultiPoly(Symbols symbols) {
  if (symbols.size() > kMaxSymbols) throw Error("too many symbols");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols[i] == symbols[j]) throw Error("duplicate symbol '" + symbols[i] + "'");
    }
  }
  symbols_ = std::make_shared<const Symbols>(std::move(symbols));
}

MultiPoly::MultiPoly(std::shared_ptr<const Symbols> symbols, std::vector<Term> terms)
    : symbols_(std::move(symbols)), terms_(std::move(terms)) {
  // Canonicalize: merge duplicates, drop zeros, sort.
  Accumulator acc;
  bool needs_merge = false;
  for (std::size_t i = 1; i < terms_.size() && !needs_merge; ++i) {
    if (!grlex_less(terms_[i].mono, terms_[i - 1].mono)) needs_merge = true;
  }
  bool has_zero = std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef == 0; });
  if (needs_merge) {
    for (auto& t : terms_) acc[t.mono] += t.coef;
    terms_ = drain(acc);
  } else if (has_zero) {
    std::erase_if(terms_, [](const Term& t) { return t.coef == 0; });
  }
  for (const auto& t : terms_) {
    for (std::size_t v = symbols_->size(); v < kMaxSymbols; ++v) {
      if (t.mono[v] != 0) throw Error("exponent vector longer than the symbol list");
    }
  }
}

MultiPoly MultiPoly::constant(const MultiPoly& like, const Integer& value) {
  MultiPoly out;
  out.symbols_ = like.symbols_;
  if (value != 0) out.terms_.push_back({Monomial{}, value});
  return out;
}

MultiPoly MultiPoly::constant(Symbols symbols, const Integer& value) {
  return constant(MultiPoly(std::move(symbols)), value);
}

MultiPoly MultiPoly::variable(Symbols symbols, std::string_view name) {
  return variable(MultiPoly(std::move(symbols)), name);
}

MultiPoly MultiPoly::variable(const MultiPoly& like, std::string_view name) {
  return monomial(like, Monomial::unit(like.index_of(name)), 1);
}

MultiPoly MultiPoly::monomial(const MultiPoly& like, const Monomial& mono, const Integer& coef) {
  MultiPoly out;
  out.symbols_ = like.symbols_;
  if (coef != 0) out.terms_.push_back({mono, coef});
  return out;
}

std::size_t MultiPoly::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_->size(); ++i) {
    if ((*symbols_)[i] == name) return i;
  }
  throw SymbolMismatch("unknown symbol '" + std::string(name) + "'");
}

bool MultiPoly::has_symbol(std::string_view name) const {
  return std::find(symbols_->begin(), symbols_->end(), name) != symbols_->end();
}

bool MultiPoly::same_symbols(const MultiPoly& other) const {
  return symbols_ == other.symbols_ || *symbols_ == *other.symbols_;
}

void MultiPoly::check_compatible(const MultiPoly& other, const char* op) const {
  if (!same_symbols(other)) {
    throw SymbolMismatch(std::string("symbol-set mismatch in ") + op);
  }
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

bool MultiPoly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }

const MultiPoly::Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.front();
}

Integer MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

Integer MultiPoly::coefficient(const Monomial& mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, const Monomial& m) { return grlex_less(m, t.mono); });
  if (it != terms_.end() && it->mono == mono) return it->coef;
  return 0;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_compatible(rhs, "add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() && j < rhs.terms_.size()) {
    const auto& a = terms_[i];
    const auto& b = rhs.terms_[j];
    if (a.mono == b.mono) {
      Integer c = a.coef + b.coef;
      if (c != 0) merged.push_back({a.mono, std::move(c)});
      ++i;
      ++j;
    } else if (grlex_less(b.mono, a.mono)) {
      merged.push_back(a);
      ++i;
    } else {
      merged.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) merged.push_back(terms_[i]);
  for (; j < rhs.terms_.size(); ++j) merged.push_back(rhs.terms_[j]);
  terms_ = std::move(merged);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
  lhs.check_compatible(rhs, "mul");
  MultiPoly out;
  out.symbols_ = lhs.symbols_;
  if (lhs.is_zero() || rhs.is_zero()) return out;
  if (rhs.terms_.size() == 1 || lhs.terms_.size() == 1) {
    const auto& single = rhs.terms_.size() == 1 ? rhs : lhs;
    const auto& other = rhs.terms_.size() == 1 ? lhs : rhs;
    const auto& t = single.terms_[0];
    out.terms_.reserve(other.terms_.size());
    for (const auto& u : other.terms_) out.terms_.push_back({u.mono * t.mono, u.coef * t.coef});
    return out;
  }
  Accumulator acc;
  acc.reserve(lhs.terms_.size() * 4 + rhs.terms_.size() * 4);
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) {
      auto& slot = acc[a.mono * b.mono];
      mpz_addmul(slot.get_mpz_t(), a.coef.get_mpz_t(), b.coef.get_mpz_t());
    }
  }
  out.terms_ = drain(acc);
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Integer& rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= rhs;
  return *this;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  if (!same_symbols(other) || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coef != other.terms_[i].coef) return false;
  }
  return true;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(*this, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::divide_coefficients(const Integer& d) const {
  if (d == 0) throw ZeroDivisor("division of coefficients by zero");
  MultiPoly out = *this;
  for (auto& t : out.terms_) {
    if (!mpz_divisible_p(t.coef.get_mpz_t(), d.get_mpz_t())) {
      throw InexactDivision("coefficient not divisible by " + d.get_str());
    }
    mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) buckets[t.mono[var]].push_back({t.mono.without(var), t.coef});
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    MultiPoly p;
    p.symbols_ = symbols_;
    p.terms_ = std::move(b);  // removing one variable keeps the grlex order among same-power terms
    sort_terms(p.terms_);
    out.push_back(std::move(p));
  }
  if (terms_.empty()) out.assign(1, MultiPoly::constant(*this, 0));
  return out;
}

MultiPoly MultiPoly::from_coefficients(const MultiPoly& like, std::size_t var, std::span<const MultiPoly> coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    like.check_compatible(coeffs[k], "from_coefficients");
    for (const auto& t : coeffs[k].terms_) {
      Monomial m = t.mono;
      m.set(var, static_cast<unsigned>(k + t.mono[var]));
      terms.push_back({m, t.coef});
    }
  }
  return MultiPoly(like.symbols_, std::move(terms));
}

MultiPoly MultiPoly::evaluate_at(std::size_t var, const Integer& value) const {
  std::vector<Integer> powers{Integer(1)};
  Accumulator acc;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    auto& slot = acc[t.mono.without(var)];
    mpz_addmul(slot.get_mpz_t(), t.coef.get_mpz_t(), powers[e].get_mpz_t());
  }
  MultiPoly out;
  out.symbols_ = symbols_;
  out.terms_ = drain(acc);
  return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    terms.push_back({m, t.coef * e});
  }
  return MultiPoly(symbols_, std::move(terms));
}

MultiPoly add(const MultiPoly& f, const MultiPoly& g) { return f + g; }

MultiPoly mul(const MultiPoly& f, const MultiPoly& g) { return f * g; }

std::optional<MultiPoly> try_exact_div(const MultiPoly& f, const MultiPoly& g) {
  if (!f.same_symbols(g)) throw SymbolMismatch("symbol-set mismatch in exact_div");
  if (g.is_zero()) throw ZeroDivisor("exact_div by the zero polynomial");
  if (f.is_zero()) return MultiPoly::constant(f, 0);
  if (g.is_constant()) {
    const Integer& d = g.leading_coef();
    for (const auto& t : f.terms()) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    }
    return f.divide_coefficients(d);
  }
  for (std::size_t v = 0; v < f.symbol_count(); ++v) {
    if (g.degree_in(v) > f.degree_in(v)) return std::nullopt;
  }
  const auto& lead = g.leading_term();
  std::map<Monomial, Integer, GrlexGreater> rem;
  for (const auto& t : f.terms()) rem.emplace(t.mono, t.coef);
  std::vector<MultiPoly::Term> quotient;
  Integer c;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) return std::nullopt;
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coef.get_mpz_t())) return std::nullopt;
    Monomial m = lead.mono.quotient_of(top->first);
    mpz_divexact(c.get_mpz_t(), top->second.get_mpz_t(), lead.coef.get_mpz_t());
    rem.erase(top);
    for (std::size_t i = 1; i < g.terms().size(); ++i) {
      const auto& t = g.terms()[i];
      auto [it, inserted] = rem.try_emplace(t.mono * m);
      mpz_submul(it->second.get_mpz_t(), c.get_mpz_t(), t.coef.get_mpz_t());
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({m, c});
  }
  return MultiPoly(f.symbols_ptr(), std::move(quotient));
}

MultiPoly exact_div(const MultiPoly& f, const MultiPoly& g) {
  auto q = try_exact_div(f, g);
  if (!q) throw InexactDivision("no exact quotient: (" + to_string(f).substr(0, 80) + ") / (" +
                                to_string(g).substr(0, 80) + ")");
  return *std::move(q);
}

MultiPoly wedge(const MultiPoly& g, const MultiPoly& g_n, const MultiPoly& gp, const MultiPoly& gp_n) {
  return g * gp_n - gp * g_n;
}

MultiPoly resultant_quadratic(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.degree_in(var) > 2 || q.degree_in(var) > 2) throw Error("resultant_quadratic: degree above 2");
  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  pc.resize(3, MultiPoly::constant(p, 0));
  qc.resize(3, MultiPoly::constant(q, 0));
  // Sylvester determinant for formal degree (2, 2).
  MultiPoly t = pc[2] * qc[0] - pc[0] * qc[2];
  return t * t - (pc[2] * qc[1] - pc[1] * qc[2]) * (pc[1] * qc[0] - pc[0] * qc[1]);
}

MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& bindings, const Symbols& target) {
  MultiPoly zero(target);
  const auto& symbols = f.symbols();
  std::vector<MultiPoly> images;
  images.reserve(symbols.size());
  for (const auto& name : symbols) {
    auto it = bindings.find(name);
    if (it != bindings.end()) {
      images.push_back(rebase(it->second, target));
    } else if (zero.has_symbol(name)) {
      images.push_back(MultiPoly::variable(zero, name));
    } else {
      images.push_back(MultiPoly::constant(zero, 0));  // placeholder; only an error if used
    }
  }
  std::vector<std::vector<MultiPoly>> powers(symbols.size());
  auto power = [&](std::size_t var, unsigned e) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MultiPoly::constant(zero, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  for (std::size_t v = 0; v < symbols.size(); ++v) {
    if (f.uses(v) && !bindings.count(symbols[v]) && !zero.has_symbol(symbols[v])) {
      throw SymbolMismatch("substitute: symbol '" + symbols[v] + "' is neither bound nor retained");
    }
  }
  MultiPoly out = zero;
  for (const auto& t : f.terms()) {
    MultiPoly term = MultiPoly::constant(zero, t.coef);
    for (std::size_t v = 0; v < symbols.size(); ++v) {
      if (t.mono[v] > 0) term = term * power(v, t.mono[v]);
    }
    out += term;
  }
  return out;
}

std::complex<double> evaluate(const MultiPoly& f, const std::map<std::string, std::complex<double>>& bindings) {
  const auto& symbols = f.symbols();
  std::vector<std::complex<double>> values(symbols.size());
  for (std::size_t v = 0; v < symbols.size(); ++v) {
    auto it = bindings.find(symbols[v]);
    if (it != bindings.end()) {
      values[v] = it->second;
    } else if (f.uses(v)) {
      throw SymbolMismatch("evaluate: symbol '" + symbols[v] + "' is not bound");
    }
  }
  std::complex<double> sum = 0.0;
  for (const auto& t : f.terms()) {
    std::complex<double> term = t.coef.get_d();
    for (std::size_t v = 0; v < symbols.size(); ++v) {
      for (unsigned k = 0; k < t.mono[v]; ++k) term *= values[v];
    }
    sum += term;
  }
  return sum;
}

MultiPoly rebase(const MultiPoly& f, const Symbols& target) {
  if (f.symbols() == target) return f;
  MultiPoly zero(target);
  std::vector<std::size_t> map(f.symbol_count(), kMaxSymbols);
  for (std::size_t v = 0; v < f.symbol_count(); ++v) {
    if (zero.has_symbol(f.symbols()[v])) {
      map[v] = zero.index_of(f.symbols()[v]);
    } else if (f.uses(v)) {
      throw SymbolMismatch("rebase: symbol '" + f.symbols()[v] + "' missing from target");
    }
  }
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < f.symbol_count(); ++v) {
      if (t.mono[v] > 0) m.set(map[v], t.mono[v]);
    }
    terms.push_back({m, t.coef});
  }
  return MultiPoly(zero.symbols_ptr(), std::move(terms));
}

MultiPoly normalize_lex_positive(const MultiPoly& f) {
  if (f.is_zero()) return f;
  MultiPoly p = f.divide_coefficients(content(f));
  const auto* best = &p.terms().front();
  for (const auto& t : p.terms()) {
    if (lex_less(best->mono, t.mono)) best = &t;
  }
  return best->coef < 0 ? -p : p;
}

std::optional<mpq_class> rational_multiple(const MultiPoly& f, const MultiPoly& g) {
  if (!f.same_symbols(g) || f.size() != g.size() || g.is_zero()) return std::nullopt;
  mpq_class ratio(f.terms()[0].coef, g.terms()[0].coef);
  ratio.canonicalize();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f.terms()[i].mono == g.terms()[i].mono)) return std::nullopt;
    if (f.terms()[i].coef * ratio.get_den() != g.terms()[i].coef * ratio.get_num()) return std::nullopt;
  }
  return ratio;
}

}  // namespace invariety::poly
