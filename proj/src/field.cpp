#include "defectus/field.hpp"

#include <array>
#include <limits>
#include <random>
#include <utility>
#include <sstream>

#include "defectus/random.hpp"

namespace defectus {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimePower prime_power(std::uint64_t q) {
  if (q < 2) return {};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  return q == 1 ? PrimePower{p, k} : PrimePower{};
}

namespace detail {

constexpr unsigned kMaxRelDegree = 62;

struct FieldImpl {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t base_q = 0;  // order of the immediate base field
  unsigned m = 1;            // degree over the base
  unsigned k = 1;            // degree over F_p
  std::shared_ptr<const FieldImpl> base;
  std::vector<std::uint64_t> modulus;  // monic, size m + 1, base-field digits
  bool binary = false;                 // base is F_2: digits are bits
  std::uint64_t modulus_bits = 0;
};

namespace {

using Digits = std::array<std::uint64_t, kMaxRelDegree + 1>;

std::uint64_t add(const FieldImpl& F, std::uint64_t a, std::uint64_t b);
std::uint64_t sub(const FieldImpl& F, std::uint64_t a, std::uint64_t b);
std::uint64_t mul(const FieldImpl& F, std::uint64_t a, std::uint64_t b);

void unpack(const FieldImpl& F, std::uint64_t x, Digits& d) {
  for (unsigned i = 0; i < F.m; ++i) {
    d[i] = x % F.base_q;
    x /= F.base_q;
  }
}

std::uint64_t pack(const FieldImpl& F, const std::uint64_t* d) {
  std::uint64_t x = 0;
  for (unsigned i = F.m; i-- > 0;) x = x * F.base_q + d[i];
  return x;
}

std::uint64_t add(const FieldImpl& F, std::uint64_t a, std::uint64_t b) {
  if (!F.base) {
    std::uint64_t s = a + b;
    return s >= F.p ? s - F.p : s;
  }
  if (F.binary) return a ^ b;
  Digits da, db;
  unpack(F, a, da);
  unpack(F, b, db);
  for (unsigned i = 0; i < F.m; ++i) da[i] = add(*F.base, da[i], db[i]);
  return pack(F, da.data());
}

std::uint64_t neg(const FieldImpl& F, std::uint64_t a) {
  if (!F.base) return a == 0 ? 0 : F.p - a;
  if (F.binary) return a;
  Digits da;
  unpack(F, a, da);
  for (unsigned i = 0; i < F.m; ++i) da[i] = neg(*F.base, da[i]);
  return pack(F, da.data());
}

std::uint64_t sub(const FieldImpl& F, std::uint64_t a, std::uint64_t b) {
  if (!F.base) return a >= b ? a - b : a + F.p - b;
  if (F.binary) return a ^ b;
  return add(F, a, neg(F, b));
}

std::uint64_t mul(const FieldImpl& F, std::uint64_t a, std::uint64_t b) {
  if (!F.base) return (a * b) % F.p;
  if (a == 0 || b == 0) return 0;
  if (F.binary) {
    std::uint64_t r = 0;
    for (unsigned i = F.m; i-- > 0;) {
      r <<= 1;
      if ((r >> F.m) & 1U) r ^= F.modulus_bits;
      if ((b >> i) & 1U) r ^= a;
    }
    return r;
  }
  const FieldImpl& B = *F.base;
  Digits da, db;
  unpack(F, a, da);
  unpack(F, b, db);
  std::array<std::uint64_t, 2 * kMaxRelDegree + 1> prod{};
  for (unsigned i = 0; i < F.m; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < F.m; ++j) {
      if (db[j] == 0) continue;
      prod[i + j] = add(B, prod[i + j], mul(B, da[i], db[j]));
    }
  }
  for (unsigned deg = 2 * F.m - 2; deg >= F.m; --deg) {
    const std::uint64_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (unsigned t = 0; t < F.m; ++t) {
      if (F.modulus[t] != 0) prod[deg - F.m + t] = sub(B, prod[deg - F.m + t], mul(B, c, F.modulus[t]));
    }
  }
  return pack(F, prod.data());
}

std::uint64_t power(const FieldImpl& F, std::uint64_t a, std::uint64_t e) {
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1U) result = mul(F, result, a);
    a = mul(F, a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t inverse(const FieldImpl& F, std::uint64_t a) {
  if (a == 0) throw InvalidArgument("inverse of zero field element");
  if (!F.base) {
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(F.p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      const std::int64_t quotient = r / new_r;
      t = std::exchange(new_t, t - quotient * new_t);
      r = std::exchange(new_r, r - quotient * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(F.p);
    return static_cast<std::uint64_t>(t);
  }
  return power(F, a, F.q - 2);
}

bool same(const FieldImpl* a, const FieldImpl* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->p != b->p || a->m != b->m || a->k != b->k || a->modulus != b->modulus) return false;
  return same(a->base.get(), b->base.get());
}

}  // namespace
}  // namespace detail

using detail::FieldImpl;

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw InvalidArgument("field characteristic must be below 2^31");
  auto impl = std::make_shared<FieldImpl>();
  impl->p = p;
  impl->q = p;
  return Field(std::move(impl));
}

Field Field::make(std::uint64_t p, unsigned k, std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("extension degree must be at least 1");
  Field Fp = prime(p);
  return k == 1 ? Fp : Fp.extension(k, seed);
}

namespace {

Field build_extension(const Field& base, std::shared_ptr<const FieldImpl> base_impl, std::vector<std::uint64_t> modulus,
                      Field (*wrap)(std::shared_ptr<const FieldImpl>)) {
  const unsigned m = static_cast<unsigned>(modulus.size() - 1);
  auto impl = std::make_shared<FieldImpl>();
  impl->p = base.characteristic();
  impl->base_q = base.order();
  impl->m = m;
  impl->k = base.absolute_degree() * m;
  impl->base = std::move(base_impl);
  impl->binary = base.is_prime_field() && base.characteristic() == 2;
  if (impl->binary) {
    for (unsigned i = 0; i <= m; ++i)
      if (modulus[i]) impl->modulus_bits |= (1ULL << i);
  }
  impl->modulus = std::move(modulus);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) q *= impl->base_q;
  impl->q = q;
  return wrap(std::move(impl));
}

std::uint64_t checked_order(std::uint64_t base_q, unsigned m) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (q > (std::numeric_limits<std::uint64_t>::max() >> 2) / base_q) {
      throw InvalidArgument("extension field too large to pack into 62 bits");
    }
    q *= base_q;
  }
  return q;
}

}  // namespace

Field Field::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  Field Fp = prime(p);
  if (modulus.size() < 2) throw InvalidArgument("modulus must have degree at least 1");
  if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
  upoly::UPoly f;
  for (auto c : modulus) {
    if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    f.push_back(Fel{c});
  }
  if (!upoly::is_irreducible(Fp, f)) throw InvalidArgument("modulus is reducible");
  if (modulus.size() == 2) return Fp;
  checked_order(p, static_cast<unsigned>(modulus.size() - 1));
  return build_extension(Fp, Fp.impl_, std::move(modulus),
                         [](std::shared_ptr<const FieldImpl> i) { return Field(std::move(i)); });
}

Field Field::extension(unsigned m, std::uint64_t seed) const {
  if (m < 1) throw InvalidArgument("extension degree must be at least 1");
  if (m == 1) return *this;
  if (m > detail::kMaxRelDegree) throw InvalidArgument("extension degree too large");
  checked_order(order(), m);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(order()), static_cast<std::uint32_t>(order() >> 32), m};
  std::mt19937_64 rng(seq);
  upoly::UPoly f(m + 1);
  for (;;) {
    f[m] = one();
    for (unsigned i = 0; i < m; ++i) f[i] = uniform_element(*this, rng);
    if (is_zero(f[0])) continue;
    if (upoly::is_irreducible(*this, f)) break;
  }
  std::vector<std::uint64_t> modulus;
  for (Fel c : f) modulus.push_back(c.v);
  return build_extension(*this, impl_, std::move(modulus),
                         [](std::shared_ptr<const FieldImpl> i) { return Field(std::move(i)); });
}

Field Field::randomization_extension() const {
  constexpr std::uint64_t kTarget = 1ULL << 20;
  unsigned m = 1;
  std::uint64_t size = order();
  while (size < kTarget) {
    size *= order();
    ++m;
  }
  return extension(m, 0);
}

std::uint64_t Field::characteristic() const { return impl_->p; }
std::uint64_t Field::order() const { return impl_->q; }
unsigned Field::absolute_degree() const { return impl_->k; }
unsigned Field::relative_degree() const { return impl_->m; }
bool Field::is_prime_field() const { return !impl_->base; }

Field Field::base() const {
  if (!impl_->base) throw InvalidArgument("prime field has no base field");
  return Field(impl_->base);
}

std::vector<Fel> Field::modulus() const {
  std::vector<Fel> out;
  for (auto c : impl_->modulus) out.push_back(Fel{c});
  return out;
}

bool Field::contains_subfield(const Field& sub) const {
  for (const FieldImpl* f = impl_.get(); f; f = f->base.get()) {
    if (detail::same(f, sub.impl_.get())) return true;
  }
  return false;
}

Fel Field::from_int(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(impl_->p);
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return Fel{static_cast<std::uint64_t>(r)};
}

Fel Field::element(std::uint64_t index) const {
  if (index >= impl_->q) throw InvalidArgument("field element index out of range");
  return Fel{index};
}

Fel Field::add(Fel a, Fel b) const { return Fel{detail::add(*impl_, a.v, b.v)}; }
Fel Field::sub(Fel a, Fel b) const { return Fel{detail::sub(*impl_, a.v, b.v)}; }
Fel Field::neg(Fel a) const { return Fel{detail::neg(*impl_, a.v)}; }
Fel Field::mul(Fel a, Fel b) const { return Fel{detail::mul(*impl_, a.v, b.v)}; }
Fel Field::inv(Fel a) const { return Fel{detail::inverse(*impl_, a.v)}; }
Fel Field::pow(Fel a, std::uint64_t e) const { return Fel{detail::power(*impl_, a.v, e)}; }

std::vector<std::uint64_t> Field::coords(Fel a) const {
  std::vector<std::uint64_t> c(impl_->k);
  std::uint64_t x = a.v;
  for (auto& digit : c) {
    digit = x % impl_->p;
    x /= impl_->p;
  }
  return c;
}

Fel Field::from_coords(std::span<const std::uint64_t> c) const {
  if (c.size() != impl_->k) throw InvalidArgument("coordinate vector has wrong length");
  std::uint64_t x = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= impl_->p) throw InvalidArgument("coordinate out of range [0, p)");
    x = x * impl_->p + c[i];
  }
  return Fel{x};
}

std::string Field::to_string(Fel a) const {
  if (is_prime_field()) return std::to_string(a.v);
  std::ostringstream os;
  os << '[';
  auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << order();
  if (!is_prime_field()) {
    Field b = base();
    os << " = F_" << b.order() << "[t]/(";
    bool first = true;
    for (std::size_t i = impl_->modulus.size(); i-- > 0;) {
      const Fel c{impl_->modulus[i]};
      if (c.v == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (c.v != 1 || i == 0) os << b.to_string(c);
      if (i > 0) os << (c.v != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    os << ')';
  }
  return os.str();
}

bool operator==(const Field& a, const Field& b) { return detail::same(a.impl_.get(), b.impl_.get()); }

namespace upoly {

void trim(UPoly& f) {
  while (!f.empty() && f.back().v == 0) f.pop_back();
}

int degree(const UPoly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i].v != 0) return static_cast<int>(i);
  return -1;
}

UPoly rem(const Field& F, UPoly a, const UPoly& m) {
  const int dm = degree(m);
  if (dm < 0) throw InvalidArgument("polynomial division by zero");
  const Fel lead_inv = F.inv(m[dm]);
  trim(a);
  while (degree(a) >= dm) {
    const int da = degree(a);
    const Fel c = F.mul(a[da], lead_inv);
    for (int i = 0; i <= dm; ++i) a[da - dm + i] = F.sub(a[da - dm + i], F.mul(c, m[i]));
    trim(a);
  }
  return a;
}

UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m) {
  if (a.empty() || b.empty()) return {};
  UPoly prod(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
  }
  return rem(F, std::move(prod), m);
}

UPoly powmod(const Field& F, UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly result{F.one()};
  base = rem(F, std::move(base), m);
  while (e > 0) {
    if (e & 1U) result = mulmod(F, result, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return rem(F, std::move(result), m);
}

UPoly gcd(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Field& F, const UPoly& f) {
  const int k = degree(f);
  if (k < 1) return false;
  if (k == 1) return true;
  const UPoly x{F.zero(), F.one()};
  UPoly h = x;
  for (int i = 1; i <= k / 2; ++i) {
    h = powmod(F, h, F.order(), f);
    UPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), F.zero());
    diff[1] = F.sub(diff[1], F.one());
    trim(diff);
    if (degree(gcd(F, f, diff)) > 0) return false;
  }
  return true;
}

}  // namespace upoly

}  // namespace defectus
