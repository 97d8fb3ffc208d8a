#include "sbill/rational.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

namespace sbill {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::uint64_t uabs(std::int64_t v) noexcept {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

u128 uabs128(i128 v) noexcept { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

std::uint64_t gcd_mixed(i128 t, std::uint64_t g) noexcept {
  return gcd64(static_cast<std::uint64_t>(uabs128(t) % g), g);
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::uint64_t g = gcd64(static_cast<std::uint64_t>(uabs128(n)),
                                static_cast<std::uint64_t>(d));
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!try_small(n, d)) {
    mpq_class q(mpz_class(std::to_string(static_cast<long long>(num))),
                mpz_class(std::to_string(static_cast<long long>(den))));
    q.canonicalize();
    set_big(q);
  }
}

void Rat::set_big(const mpq_class& q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    const long n = q.get_num().get_si();
    if (n != std::numeric_limits<long>::min()) {
      num_ = n;
      den_ = q.get_den().get_si();
      big_.reset();
      return;
    }
  }
  big_ = std::make_unique<mpq_class>(q);
  num_ = 0;
  den_ = 1;
}

mpq_class Rat::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rat::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rat::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

double Rat::to_double() const {
  if (!big_) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

bool Rat::is_dyadic() const {
  if (!big_) return (den_ & (den_ - 1)) == 0;
  const mpz_class& d = big_->get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

std::size_t Rat::hash() const noexcept {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    hash_combine(h, std::hash<std::int64_t>{}(den_));
    return h;
  }
  auto limbs = [](mpz_srcptr z) {
    const auto n = static_cast<std::size_t>(mpz_size(z));
    std::string_view bytes(reinterpret_cast<const char*>(mpz_limbs_read(z)),
                           n * sizeof(mp_limb_t));
    std::size_t h = std::hash<std::string_view>{}(bytes);
    hash_combine(h, static_cast<std::size_t>(mpz_sgn(z) + 1));
    return h;
  };
  std::size_t h = limbs(big_->get_num_mpz_t());
  hash_combine(h, limbs(big_->get_den_mpz_t()));
  return h;
}

std::string Rat::str() const {
  if (!big_) return std::to_string(num_) + "/" + std::to_string(den_);
  return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

Rat Rat::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto check_int = [&](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational: " + s);
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw std::invalid_argument("malformed rational: " + s);
  };
  auto to_mpz = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return mpz_class(part);
  };
  mpq_class q;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string n = s.substr(0, slash);
    const std::string d = s.substr(slash + 1);
    check_int(n);
    check_int(d);
    mpz_class den = to_mpz(d);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    q = mpq_class(to_mpz(n), den);
  } else if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    check_int(whole);
    if (!frac.empty()) check_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))
      throw std::invalid_argument("malformed rational: " + s);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = to_mpz(whole);
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(frac);
    mpz_class n = w * scale;
    if (w < 0 || neg) n -= f; else n += f;
    q = mpq_class(n, scale);
  } else {
    check_int(s);
    q = mpq_class(to_mpz(s));
  }
  q.canonicalize();
  return Rat(q);
}

Rat Rat::operator-() const {
  Rat r;
  if (!big_) {
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  r.set_big(-*big_);
  return r;
}

Rat operator+(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    Rat r;
    const std::int64_t an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (ad == 1 && bd == 1) {
      if (r.try_small(static_cast<i128>(an) + bn, 1)) return r;
    } else {
      const std::uint64_t g = gcd64(static_cast<std::uint64_t>(ad), static_cast<std::uint64_t>(bd));
      if (g == 1) {
        const i128 n = static_cast<i128>(an) * bd + static_cast<i128>(bn) * ad;
        const i128 d = static_cast<i128>(ad) * bd;
        if (r.try_small(n, d)) return r;
      } else {
        const i128 t = static_cast<i128>(an) * static_cast<std::int64_t>(bd / g) +
                       static_cast<i128>(bn) * static_cast<std::int64_t>(ad / g);
        const std::uint64_t g2 = gcd_mixed(t, g);
        const i128 n = t / static_cast<i128>(g2);
        const i128 d = static_cast<i128>(ad / static_cast<std::int64_t>(g)) *
                       static_cast<std::int64_t>(bd / static_cast<std::int64_t>(g2));
        if (r.try_small(n, d)) return r;
      }
    }
  }
  Rat r;
  r.set_big(a.to_mpq() + b.to_mpq());
  return r;
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    Rat r;
    if (a.num_ == 0 || b.num_ == 0) return r;
    const std::uint64_t g1 = gcd64(uabs(a.num_), static_cast<std::uint64_t>(b.den_));
    const std::uint64_t g2 = gcd64(uabs(b.num_), static_cast<std::uint64_t>(a.den_));
    const i128 n = static_cast<i128>(a.num_ / static_cast<std::int64_t>(g1)) *
                   (b.num_ / static_cast<std::int64_t>(g2));
    const i128 d = static_cast<i128>(a.den_ / static_cast<std::int64_t>(g2)) *
                   (b.den_ / static_cast<std::int64_t>(g1));
    if (r.try_small(n, d)) return r;
  }
  Rat r;
  r.set_big(a.to_mpq() * b.to_mpq());
  return r;
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (!b.big_) {
    Rat inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  Rat r;
  r.set_big(a.to_mpq() / b.to_mpq());
  return r;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace sbill
