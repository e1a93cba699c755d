#include "tvb/rational_function.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <stdexcept>

namespace tvb {

namespace {

// acc += a * b (or -=) through GMP directly; `scratch` avoids an allocation per term.
inline void mul_acc(Rational& acc, const Rational& a, const Rational& b, Rational& scratch, bool subtract = false) {
  mpq_mul(scratch.backend().data(), a.backend().data(), b.backend().data());
  if (subtract) mpq_sub(acc.backend().data(), acc.backend().data(), scratch.backend().data());
  else mpq_add(acc.backend().data(), acc.backend().data(), scratch.backend().data());
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Rational> v(static_cast<size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial(std::vector<Rational>{-root, 1}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  if (c_.back() == 1) return *this;
  const Rational lc = c_.back();
  std::vector<Rational> v = c_;
  for (auto& x : v) x /= lc;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(const Rational& p) const {
  // Horner in the variable s with t = p + s.
  const Polynomial tp(std::vector<Rational>{p, 1});
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * tp + Polynomial(*it);
  return acc;
}

Polynomial Polynomial::reversed(int n) const {
  if (n < degree()) throw std::invalid_argument("reversed: n below degree");
  std::vector<Rational> v(static_cast<size_t>(n) + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) v[static_cast<size_t>(n) - i] = c_[i];
  return Polynomial(std::move(v));
}

int Polynomial::low_order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x = -x;
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  Rational scratch;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) mul_acc(v[i + j], a.c_[i], b.c_[j], scratch);
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> rem = a.coefficients();
  const std::vector<Rational>& bc = b.coefficients();
  const Rational& lb = bc.back();
  std::vector<Rational> quot(static_cast<size_t>(a.degree() - db) + 1, Rational(0));
  Rational scratch;
  for (int k = a.degree(); k >= db; --k) {
    Rational& q = quot[static_cast<size_t>(k - db)];
    if (rem[static_cast<size_t>(k)] == 0) continue;
    mpq_div(q.backend().data(), rem[static_cast<size_t>(k)].backend().data(), lb.backend().data());
    for (int j = 0; j < db; ++j) mul_acc(rem[static_cast<size_t>(k - db + j)], q, bc[static_cast<size_t>(j)], scratch, true);
    rem[static_cast<size_t>(k)] = 0;
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  // monic remainders keep the rational coefficients from growing
  Polynomial x = a.monic(), y = b.monic();
  while (y.degree() > 0) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? std::move(r) : r.monic();
  }
  return y.is_zero() ? x : Polynomial(1);
}

Polynomial pow(const Polynomial& p, int e) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial out(1), base = p;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

namespace {

std::string monomial_text(const std::string& mag, int k, char var) {
  std::string v(1, var);
  if (k == 0) return mag;
  std::string mon = k == 1 ? v : v + "^" + std::to_string(k);
  if (mag == "1") return mon;
  return mag + "*" + mon;
}

}  // namespace

std::string Polynomial::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const std::string mag = tvb::to_string(neg ? Rational(-c) : c);
    if (s.empty())
      s = neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += monomial_text(mag, k, var);
  }
  return s;
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.degree() > 0) {
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  const Rational lc = den_.leading();
  if (lc != 1) {
    num_ = num_ * Polynomial(Rational(1) / lc);
    den_ = den_.monic();
  }
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant: " + to_string());
  return num_.coeff(0);
}

namespace {

Polynomial quotient(const Polynomial& a, const Polynomial& g) { return g.degree() == 0 ? a : divmod(a, g).first; }

}  // namespace

RationalFunction RationalFunction::coprime(Polynomial num, Polynomial den) {
  RationalFunction out;
  if (num.is_zero()) return out;
  const Rational lc = den.leading();
  if (lc != 1) {
    num = num * Polynomial(Rational(1) / lc);
    den = den.monic();
  }
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  return out;
}

// Henrici: only the gcd of the denominators can cancel.
RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return RationalFunction::coprime(a.num_ + b.num_, Polynomial(1));
  const Polynomial g = gcd(a.den_, b.den_);
  const Polynomial ad = quotient(a.den_, g), bd = quotient(b.den_, g);
  const Polynomial t = a.num_ * bd + b.num_ * ad;
  if (t.is_zero()) return {};
  const Polynomial h = g.degree() == 0 ? g : gcd(t, g);
  return RationalFunction::coprime(quotient(t, h), ad * quotient(b.den_, h));
}

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction out = a;
  out.num_ = -out.num_;
  return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

// Cross cancellation of reduced fractions.
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  return RationalFunction::coprime(quotient(a.num_, g1) * quotient(b.num_, g2),
                                   quotient(a.den_, g2) * quotient(b.den_, g1));
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  if (a.is_zero()) return {};
  const Polynomial g1 = gcd(a.num_, b.num_), g2 = gcd(b.den_, a.den_);
  return RationalFunction::coprime(quotient(a.num_, g1) * quotient(b.den_, g2),
                                   quotient(a.den_, g2) * quotient(b.num_, g1));
}

RationalFunction pow(const RationalFunction& f, int e) {
  if (e < 0) return RationalFunction(1) / pow(f, -e);
  return RationalFunction(pow(f.numerator(), e), pow(f.denominator(), e));
}

std::string RationalFunction::to_string() const {
  if (is_constant()) return tvb::to_string(constant_value());
  Integer l = 1;
  for (const auto& c : num_.coefficients()) l = lcm(l, denom(c));
  for (const auto& c : den_.coefficients()) l = lcm(l, denom(c));
  Polynomial n = num_ * Polynomial(Rational(l));
  Polynomial d = den_ * Polynomial(Rational(l));
  Integer g = 0;
  for (const auto& c : n.coefficients()) g = tvb::gcd(g, numer(c));
  for (const auto& c : d.coefficients()) g = tvb::gcd(g, numer(c));
  if (g > 1) {
    n = n * Polynomial(Rational(1) / Rational(g));
    d = d * Polynomial(Rational(1) / Rational(g));
  }
  if (d == Polynomial(1)) return n.to_string();
  return "(" + n.to_string() + ")/(" + d.to_string() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RationalFunction parse() {
    RationalFunction f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse rational function '" + std::string(s_) + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    while (true) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  static bool starts_factor(char c) { return c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c)); }

  RationalFunction term() {
    RationalFunction acc = unary();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        const RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else if (starts_factor(c)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (peek() == '^') {
      ++pos_;
      int sign = 1;
      if (peek() == '-') {
        sign = -1;
        ++pos_;
      } else if (peek() == '+') {
        ++pos_;
      }
      skip();
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be an integer");
      if (pos_ - start > 4) fail("exponent too large");
      const int e = sign * std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (e < 0 && base.is_zero()) fail("zero to a negative power");
      return pow(base, e);
    }
    return base;
  }

  RationalFunction atom() {
    const char c = peek();
    if (c == 't') {
      ++pos_;
      return RationalFunction::t();
    }
    if (c == '(') {
      ++pos_;
      RationalFunction f = expr();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text) { return Parser(text).parse(); }

KMat to_kmat(const RatMat& m) {
  KMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = RationalFunction(m(i, j));
  return out;
}

KVec to_kvec(const RatVec& v) {
  KVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = RationalFunction(v(i));
  return out;
}

std::string to_string(const KVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v(i).to_string();
  }
  return s + ")";
}

}  // namespace tvb
