#include "ckoc/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ckoc {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs64(std::int64_t v) {
  return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

mpz_class mpz_from(i128 v) {
  u128 m = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class r = (hi << 64) + lo;
  return v < 0 ? mpz_class(-r) : r;
}

bool fits64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  set_from_wide(num, den);
}

Rational::Rational(const mpq_class& q) { set_from_mpq(q); }

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
  return *this;
}

void Rational::set_from_mpq(mpq_class q) {
  q.canonicalize();
  if (fits64(q.get_num()) && fits64(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

void Rational::set_from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(uabs(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (num >= kMin64 && num <= kMax64 && den <= kMax64) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q;
  q.get_num() = mpz_from(num);
  q.get_den() = mpz_from(den);
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  auto bad = [&]() { return std::invalid_argument("malformed rational '" + s + "'"); };
  auto integer_ok = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
  };
  if (s.empty()) throw bad();
  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), d = s.substr(slash + 1);
    if (!integer_ok(p) || !integer_ok(d)) throw bad();
    q.get_num() = to_mpz(p);
    q.get_den() = to_mpz(d);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !integer_ok(whole) || !integer_ok(frac) || frac[0] == '-' || frac[0] == '+')
      throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q.get_num() = mpz_class(whole, 10) * scale + mpz_class(frac, 10);
    if (neg) q.get_num() = -q.get_num();
    q.get_den() = scale;
  } else {
    if (!integer_ok(s)) throw bad();
    q.get_num() = to_mpz(s);
  }
  return Rational(q);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  q.get_num() = mpz_from(num_);
  q.get_den() = mpz_from(den_);
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.set_from_mpq(-*big_);
  } else {
    r.set_from_wide(-i128(num_), den_);
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (big_ || o.big_) {
    set_from_mpq(to_mpq() + o.to_mpq());
    return *this;
  }
  if (den_ == o.den_) {
    set_from_wide(i128(num_) + o.num_, den_);
    return *this;
  }
  std::int64_t g = std::gcd(den_, o.den_);
  i128 n = i128(num_) * (o.den_ / g) + i128(o.num_) * (den_ / g);
  i128 d = i128(den_) * (o.den_ / g);
  set_from_wide(n, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (big_ || o.big_) {
    set_from_mpq(to_mpq() * o.to_mpq());
    return *this;
  }
  std::uint64_t g1 = std::gcd(uabs64(num_), std::uint64_t(o.den_));
  std::uint64_t g2 = std::gcd(uabs64(o.num_), std::uint64_t(den_));
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  i128 n = (i128(num_) / i128(g1)) * (i128(o.num_) / i128(g2));
  i128 d = (i128(den_) / i128(g2)) * (i128(o.den_) / i128(g1));
  set_from_wide(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  if (big_ || o.big_) {
    set_from_mpq(to_mpq() / o.to_mpq());
    return *this;
  }
  Rational inv;
  inv.set_from_wide(o.den_, o.num_);
  return *this *= inv;
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normal form: a small value is never stored big
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  i128 l = i128(a.num_) * b.den_;
  i128 r = i128(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(str());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace ckoc
