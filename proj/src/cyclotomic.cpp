#include "excoll/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "excoll/error.hpp"
#include "excoll/limits.hpp"

namespace excoll {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ConductorOverflow: return "ConductorOverflow";
    case Errc::ParseError: return "ParseError";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::NegativeDegree: return "NegativeDegree";
    case Errc::BasisMismatch: return "BasisMismatch";
    case Errc::WindowViolation: return "WindowViolation";
    case Errc::NonConcentratedHom: return "NonConcentratedHom";
    case Errc::IrrepVerificationFailed: return "IrrepVerificationFailed";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::OrthogonalityFailure: return "OrthogonalityFailure";
    case Errc::NotStrong: return "NotStrong";
    case Errc::ValidationError: return "ValidationError";
    case Errc::InvalidComplex: return "InvalidComplex";
  }
  return "Unknown";
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) {
    throw Error(Errc::ParseError, "malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  BigInt d(den);
  if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
  Rat r(BigInt(num), d);
  r.canonicalize();
  return r;
}

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

long lcm_conductor(long a, long b) {
  long l = std::lcm(a, b);
  if (l > limits::conductor_cap()) {
    throw Error(Errc::ConductorOverflow, "conductor " + std::to_string(l) + " exceeds cap " +
                                             std::to_string(limits::conductor_cap()));
  }
  return l;
}

namespace {

long moebius(long n) {
  long result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

// Product of integer polynomials, constant term first.
std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact quotient of a by the monic polynomial b.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<BigInt> q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    BigInt c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  return q;
}

struct FieldData {
  long phi;
  std::vector<Rat> modulus;  // monic, degree phi
};

const FieldData& field(long conductor) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<FieldData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(conductor);
  if (it != cache.end()) return *it->second;
  auto poly = cyclotomic_polynomial(conductor);
  auto data = std::make_unique<FieldData>();
  data->phi = static_cast<long>(poly.size()) - 1;
  for (auto& c : poly) data->modulus.emplace_back(c);
  auto& ref = *data;
  cache.emplace(conductor, std::move(data));
  return ref;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(long n) {
  if (n < 1) throw Error(Errc::InvalidParameter, "cyclotomic index must be positive");
  if (n > limits::conductor_cap()) {
    throw Error(Errc::ConductorOverflow, "cyclotomic index " + std::to_string(n) + " exceeds cap");
  }
  std::vector<BigInt> num{1};
  std::vector<BigInt> den{1};
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long mu = moebius(n / d);
    if (mu == 0) continue;
    std::vector<BigInt> factor(static_cast<std::size_t>(d) + 1, 0);
    factor[0] = -1;
    factor[static_cast<std::size_t>(d)] = 1;
    if (mu == 1) {
      num = poly_mul(num, factor);
    } else {
      den = poly_mul(den, factor);
    }
  }
  // den is monic up to sign: (x^d - 1) products have leading coefficient 1.
  return poly_div_exact(std::move(num), den);
}

CycNum::CycNum() : conductor_(1), coeffs_{Rat(0)} {}
CycNum::CycNum(long value) : conductor_(1), coeffs_{Rat(value)} {}
CycNum::CycNum(const Rat& value) : conductor_(1), coeffs_{value} {}

CycNum::CycNum(long conductor, std::vector<Rat> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {}

CycNum CycNum::from_coeffs(long conductor, std::vector<Rat> coeffs) {
  if (conductor < 1) throw Error(Errc::InvalidParameter, "conductor must be positive");
  if (conductor > limits::conductor_cap()) {
    throw Error(Errc::ConductorOverflow, "conductor exceeds cap");
  }
  CycNum out(conductor, {});
  out.reduce_from(std::move(coeffs));
  return out;
}

CycNum CycNum::zeta(long conductor, long k) {
  if (conductor < 1) throw Error(Errc::InvalidParameter, "conductor must be positive");
  long e = ((k % conductor) + conductor) % conductor;
  std::vector<Rat> poly(static_cast<std::size_t>(e) + 1, Rat(0));
  poly[static_cast<std::size_t>(e)] = 1;
  return from_coeffs(conductor, std::move(poly));
}

void CycNum::reduce_from(std::vector<Rat> poly) {
  const FieldData& f = field(conductor_);
  const auto phi = static_cast<std::size_t>(f.phi);
  for (std::size_t k = poly.size(); k-- > phi;) {
    if (poly[k] == 0) continue;
    Rat c = poly[k];
    for (std::size_t i = 0; i <= phi; ++i) poly[k - phi + i] -= c * f.modulus[i];
  }
  poly.resize(phi, Rat(0));
  coeffs_ = std::move(poly);
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

CycNum CycNum::embed(long target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0) {
    throw Error(Errc::InvalidParameter, "cannot embed conductor " + std::to_string(conductor_) +
                                            " into " + std::to_string(target));
  }
  if (target > limits::conductor_cap()) throw Error(Errc::ConductorOverflow, "conductor exceeds cap");
  const long step = target / conductor_;
  std::vector<Rat> poly(static_cast<std::size_t>(step * static_cast<long>(coeffs_.size() - 1)) + 1,
                        Rat(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    poly[k * static_cast<std::size_t>(step)] = coeffs_[k];
  }
  CycNum out(target, {});
  out.reduce_from(std::move(poly));
  return out;
}

CycNum CycNum::conjugate() const {
  if (conductor_ <= 2) return *this;
  std::vector<Rat> poly(static_cast<std::size_t>(conductor_), Rat(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    auto e = static_cast<std::size_t>((conductor_ - static_cast<long>(k)) % conductor_);
    poly[e] += coeffs_[k];
  }
  CycNum out(conductor_, {});
  out.reduce_from(std::move(poly));
  return out;
}

void CycNum::unify_with(CycNum& other) {
  if (conductor_ == other.conductor_) return;
  long l = lcm_conductor(conductor_, other.conductor_);
  *this = embed(l);
  other = other.embed(l);
}

CycNum& CycNum::operator+=(const CycNum& other) {
  if (conductor_ != other.conductor_) {
    CycNum b = other;
    unify_with(b);
    return *this += b;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& other) {
  if (conductor_ != other.conductor_) {
    CycNum b = other;
    unify_with(b);
    return *this -= b;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& other) {
  if (conductor_ != other.conductor_) {
    CycNum b = other;
    unify_with(b);
    return *this *= b;
  }
  if (coeffs_.size() == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  std::vector<Rat> prod(coeffs_.size() * 2 - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      if (other.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  reduce_from(std::move(prod));
  return *this;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::size_t phi = coeffs_.size();
  if (phi == 1) return CycNum(conductor_, {1 / coeffs_[0]});
  // Solve M u = e_0 where column k of M holds the coordinates of a * z^k.
  std::vector<std::vector<Rat>> m(phi, std::vector<Rat>(phi + 1, Rat(0)));
  CycNum col = *this;
  const CycNum z = zeta(conductor_, 1);
  for (std::size_t k = 0; k < phi; ++k) {
    for (std::size_t i = 0; i < phi; ++i) m[i][k] = col.coeffs_[i];
    col *= z;
  }
  m[0][phi] = 1;
  for (std::size_t c = 0; c < phi; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    Rat inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < phi; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (std::size_t k = c; k <= phi; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rat> u(phi);
  for (std::size_t i = 0; i < phi; ++i) u[i] = m[i][phi];
  return CycNum(conductor_, std::move(u));
}

CycNum& CycNum::operator/=(const CycNum& other) {
  if (other.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  return *this *= other.inverse();
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  long l = lcm_conductor(a.conductor_, b.conductor_);
  return a.embed(l).coeffs_ == b.embed(l).coeffs_;
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    Rat c = coeffs_[k];
    if (c == 0) continue;
    bool negative = c < 0;
    Rat mag = negative ? Rat(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z' << conductor_;
    if (k > 1) os << '^' << k;
  }
  if (first) return "0";
  return os.str();
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  CycNum parse() {
    CycNum total;
    skip_ws();
    if (at_end()) fail("empty literal");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      CycNum term = parse_term();
      total += sign < 0 ? -term : term;
      first = false;
      skip_ws();
    }
    return total;
  }

 private:
  CycNum parse_term() {
    Rat coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_rational();
      have_coeff = true;
      skip_ws();
      if (at_end() || peek() != '*') return CycNum(coeff);
      get();
      skip_ws();
    }
    if (at_end() || peek() != 'z') fail(have_coeff ? "expected 'z' after '*'" : "expected term");
    get();
    long n = parse_int();
    long k = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      get();
      skip_ws();
      k = parse_int();
    }
    if (n < 1) fail("conductor must be positive");
    return CycNum(coeff) * CycNum::zeta(n, k);
  }

  Rat parse_rational() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (!at_end() && peek() == '/') {
      get();
      std::size_t dstart = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) get();
      if (dstart == pos_) fail("missing denominator");
    }
    return parse_rat(text_.substr(start, pos_ - start));
  }

  long parse_int() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CycNum CycNum::parse(std::string_view text) { return LiteralParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

}  // namespace excoll
