#include "purecensus/constants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "purecensus/errors.hpp"
#include "purecensus/numeric.hpp"

namespace purecensus {

namespace {

// only place the Euler-Mascheroni constant is needed
constexpr double GAMMA = 0.57721566490153286060;

double factorial(u64 n) {
  double f = 1.0;
  for (u64 k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

u64 phi_small(u64 n) {
  u64 r = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

// multiplicative order of p mod ell, or 0 when ell divides p
u64 ord_mod(u64 p, u64 ell) {
  u64 r = p % ell;
  if (r == 0) return 0;
  u64 x = r, f = 1;
  while (x != 1) {
    x = x * r % ell;
    ++f;
  }
  return f;
}

i128 mul_checked(i128 a, i128 b) {
  u128 m = checked_mul_u128(static_cast<u128>(a), static_cast<u128>(b));
  if (m > (U128_MAX >> 1)) throw capacity_error("rational overflow");
  return static_cast<i128>(m);
}

Rational reduced(i128 num, i128 den) {
  i128 a = num, b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Rational{num / a, den / a};
}

// the local factor as a list of (numerator, denominator) pieces
Rational rational_product(const std::vector<std::pair<i128, i128>>& pieces) {
  i128 num = 1, den = 1;
  for (auto& [n, d] : pieces) {
    num = mul_checked(num, n);
    den = mul_checked(den, d);
  }
  return reduced(num, den);
}

// local factor formulas on a real argument, branch chosen by the caller;
// shared by the exact-prime path and the tail extrapolation
double log_local_real(Family f, u64 ell, double x, bool is_one) {
  double el = static_cast<double>(ell);
  switch (f) {
    case Family::D:
      return std::log1p((el - 1) / x) + (el - 1) * std::log1p(-1.0 / x);
    case Family::D5hat:
      return (el - 2) * std::log1p(-1.0 / x) +
             (is_one ? 0.0 : std::log1p((el - 1) / x));
    case Family::D6hat:
      return (2 * el - 2) * std::log1p(-1.0 / x) +
             std::log1p((is_one ? el * (el - 1) : el - 1) / x);
    case Family::A:
      return std::log1p(-1.0 / x) + (is_one ? std::log1p((el - 1) / x) : 0.0);
    case Family::B:
      return (el - 1) * std::log1p(-1.0 / x) +
             (is_one ? std::log1p(el * (el - 1) / x) - std::log1p((el - 1) / x)
                     : 0.0);
  }
  throw domain_error("unknown family");
}

// log prod_{chi != chi0 mod ell} (1 - chi(x)/x) for an argument whose
// class mod ell has multiplicative order f
double chi_part_real(u64 ell, double x, u64 f) {
  if (f == 0) return 0.0;  // ell | x: all non-principal factors are 1
  double el = static_cast<double>(ell);
  double fd = static_cast<double>(f);
  return ((el - 1) / fd) * std::log1p(-std::pow(x, -fd)) - std::log1p(-1.0 / x);
}

double log_G_real(Family f, u64 ell, double x, u64 ord) {
  return log_local_real(f, ell, x, ord == 1) +
         static_cast<double>(l_exponent(f, ell)) * chi_part_real(ell, x, ord);
}

double prefactor(Family f, u64 ell) {
  switch (f) {
    case Family::D:
      return 1.0 / factorial(ell - 2);
    case Family::D5hat:
      return 1.0 / factorial(ell - 3);  // 0! = 1 at ell = 3
    case Family::D6hat:
      return 1.0 / factorial(2 * ell - 3);
    case Family::A:
      return 1.0 / (static_cast<double>(ell - 1) * static_cast<double>(ell - 2));
    case Family::B:
      return factorial(ell - 2) /
             (factorial(2 * ell - 3) *
              std::pow(static_cast<double>(ell - 1),
                       static_cast<double>(ell - 1)));
  }
  throw domain_error("unknown family");
}

// sum of the chosen log factor over primes <= P, in fixed 65536-prime
// blocks merged in order so the result is independent of the thread count
double log_prime_sum(Family f, u64 ell, const PrimeTable& pt, u64 P,
                     unsigned threads, bool decomposed) {
  if (pt.limit < P) throw domain_error("prime table smaller than the requested bound");
  std::size_t count =
      std::upper_bound(pt.primes.begin(), pt.primes.end(), P) - pt.primes.begin();
  constexpr std::size_t BLOCK = 65536;
  std::size_t n_blocks = (count + BLOCK - 1) / BLOCK;
  std::vector<double> partial(n_blocks, 0.0);
  run_blocks(n_blocks, threads, [&](std::size_t b) {
    kahan_sum ks;
    std::size_t hi = std::min(count, (b + 1) * BLOCK);
    for (std::size_t i = b * BLOCK; i < hi; ++i) {
      u64 p = pt.primes[i];
      ks.add(decomposed ? log_G_factor(f, ell, p) : log_local_factor(f, ell, p));
    }
    partial[b] = ks.value();
  });
  kahan_sum total;
  for (double v : partial) total.add(v);
  return total.value();
}

// estimated sum of log G_p over p > P: the p^-2 coefficient of each order
// class is extracted by one Richardson step, then weighted by the class
// density phi(f)/(ell-1) and integrated against dt/(t^2 log t)
double tail_correction(Family f, u64 ell, u64 P) {
  double L = std::log(static_cast<double>(P));
  double t2 = (1.0 - 1.0 / L + 2.0 / (L * L) - 6.0 / (L * L * L)) /
              (static_cast<double>(P) * L);
  double sum = 0.0;
  for (u64 ord = 1; ord <= ell - 1; ++ord) {
    if ((ell - 1) % ord != 0) continue;
    double x = 1e4;
    double v1 = x * x * log_G_real(f, ell, x, ord);
    double v2 = 4 * x * x * log_G_real(f, ell, 2 * x, ord);
    double a2 = 2 * v2 - v1;  // 2 v(2x) - v(x) with v(x) = x^2 log G(x)
    sum += static_cast<double>(phi_small(ord)) / static_cast<double>(ell - 1) * a2;
  }
  return t2 * sum;
}

double decomposed_value(Family f, u64 ell, const PrimeTable& pt, u64 P,
                        unsigned threads) {
  double s = log_prime_sum(f, ell, pt, P, threads, true);
  double corr = tail_correction(f, ell, P);
  double lp = L_product(ell);
  int e = l_exponent(f, ell);
  return prefactor(f, ell) * std::exp(s + corr) *
         std::pow(lp, static_cast<double>(e));
}

double truncated_value(Family f, u64 ell, const PrimeTable& pt, u64 P,
                       unsigned threads) {
  double s = log_prime_sum(f, ell, pt, P, threads, false);
  return prefactor(f, ell) * std::exp(s);
}

double tail_bound(Family f, u64 ell, u64 P, double value) {
  return std::abs(value) * envelope_constant(f, ell) /
         (static_cast<double>(P) * std::log(static_cast<double>(P)));
}

std::string cache_file_name(Family f, u64 ell, u64 P, EvalMethod m) {
  std::ostringstream os;
  os << family_name(f) << "_" << ell << "_" << P << "_" << method_name(m)
     << ".json";
  return os.str();
}

std::optional<Family> family_from_name(const std::string& s) {
  for (Family f : {Family::D, Family::D5hat, Family::D6hat, Family::A, Family::B})
    if (s == family_name(f)) return f;
  return std::nullopt;
}

std::optional<EvalMethod> method_from_name(const std::string& s) {
  for (EvalMethod m : {EvalMethod::direct_truncation,
                       EvalMethod::direct_with_extrapolation,
                       EvalMethod::l_decomposition})
    if (s == method_name(m)) return m;
  return std::nullopt;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::D: return "D";
    case Family::D5hat: return "D5hat";
    case Family::D6hat: return "D6hat";
    case Family::A: return "A";
    case Family::B: return "B";
  }
  return "?";
}

const char* method_name(EvalMethod m) {
  switch (m) {
    case EvalMethod::direct_truncation: return "direct-truncation";
    case EvalMethod::direct_with_extrapolation: return "direct-with-extrapolation";
    case EvalMethod::l_decomposition: return "L-decomposition";
  }
  return "?";
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

Rational local_factor(Family f, u64 ell, u64 p) {
  validate_ell(ell);
  if (p < 2) throw domain_error("local factor needs a prime argument");
  bool is_one = p % ell == 1;
  i128 pp = static_cast<i128>(p);
  i128 el = static_cast<i128>(ell);
  std::vector<std::pair<i128, i128>> pieces;
  auto rep = [&](i128 n, i128 d, u64 times) {
    for (u64 i = 0; i < times; ++i) pieces.emplace_back(n, d);
  };
  switch (f) {
    case Family::D:
      pieces.emplace_back(pp + el - 1, pp);
      rep(pp - 1, pp, ell - 1);
      break;
    case Family::D5hat:
      rep(pp - 1, pp, ell - 2);
      if (!is_one) pieces.emplace_back(pp + el - 1, pp);
      break;
    case Family::D6hat:
      rep(pp - 1, pp, 2 * ell - 2);
      pieces.emplace_back(pp + (is_one ? el * (el - 1) : el - 1), pp);
      break;
    case Family::A:
      pieces.emplace_back(pp - 1, pp);
      if (is_one) pieces.emplace_back(pp + el - 1, pp);
      break;
    case Family::B:
      rep(pp - 1, pp, ell - 1);
      if (is_one) pieces.emplace_back(pp + el * (el - 1), pp + el - 1);
      break;
  }
  return rational_product(pieces);
}

double log_local_factor(Family f, u64 ell, u64 p) {
  validate_ell(ell);
  if (p < 2) throw domain_error("local factor needs a prime argument");
  return log_local_real(f, ell, static_cast<double>(p), p % ell == 1);
}

double envelope_constant(Family f, u64 ell) {
  validate_ell(ell);
  double el = static_cast<double>(ell);
  switch (f) {
    case Family::D:
    case Family::A:
    case Family::D5hat:
      return el * (el - 1);
    case Family::B:
    case Family::D6hat:
      return el * el * (el - 1) * (el - 1);
  }
  throw domain_error("unknown family");
}

int l_exponent(Family f, u64 ell) {
  validate_ell(ell);
  switch (f) {
    case Family::D: return 0;
    case Family::A: return 1;
    case Family::B: return static_cast<int>(ell) - 1;
    case Family::D5hat: return -1;
    case Family::D6hat: return static_cast<int>(ell) - 1;
  }
  throw domain_error("unknown family");
}

double log_G_factor(Family f, u64 ell, u64 p) {
  validate_ell(ell);
  if (p < 2) throw domain_error("local factor needs a prime argument");
  return log_G_real(f, ell, static_cast<double>(p), ord_mod(p, ell));
}

std::complex<double> L_one(const DirichletCharacter& chi, LMethod method) {
  if (chi.is_principal()) throw domain_error("L(1) needs a non-principal character");
  u64 m = chi.modulus();
  if (!is_prime_u64(m)) throw domain_error("L(1) is implemented for prime modulus");

  // character values by residue class
  std::vector<std::complex<double>> vals(m, 0.0);
  for (u64 a = 1; a < m; ++a) vals[a] = chi.value(a);

  if (method == LMethod::finite_closed_form) {
    double pi = std::numbers::pi;
    std::complex<double> tau = 0.0;
    for (u64 a = 1; a < m; ++a)
      tau += vals[a] * std::polar(1.0, 2 * pi * static_cast<double>(a) /
                                           static_cast<double>(m));
    double want = std::sqrt(static_cast<double>(m));
    if (std::abs(std::abs(tau) - want) > 1e-9 * want)
      throw cross_check_error("gauss sum magnitude is off", std::abs(tau), want);

    bool even = vals[m - 1].real() > 0.0;
    std::complex<double> s = 0.0;
    if (even) {
      for (u64 a = 1; a < m; ++a)
        s += std::conj(vals[a]) *
             std::log(2.0 * std::sin(pi * static_cast<double>(a) /
                                     static_cast<double>(m)));
      return -(tau / static_cast<double>(m)) * s;
    }
    for (u64 a = 1; a < m; ++a) s += std::conj(vals[a]) * static_cast<double>(a);
    return std::complex<double>(0.0, 1.0) * pi * tau /
           static_cast<double>(m * m) * s;
  }

  // direct series with an Euler-Maclaurin tail; valid because the character
  // values over a full period sum to zero
  u64 N = 100000 - 100000 % m;
  kahan_sum re, im;
  for (u64 n = 1; n <= N; ++n) {
    std::complex<double> v = vals[n % m];
    if (v == std::complex<double>(0.0)) continue;
    re.add(v.real() / static_cast<double>(n));
    im.add(v.imag() / static_cast<double>(n));
  }
  u64 M = N / m;
  double Md = static_cast<double>(M);
  double md = static_cast<double>(m);
  std::complex<double> tail = 0.0;
  for (u64 r = 1; r < m; ++r) {
    double rd = static_cast<double>(r);
    double big = Md * md + rd, small = Md * md;
    double h = 1.0 / big - 1.0 / small;
    double hp = -md / (big * big) + md / (small * small);
    double hppp = -6.0 * md * md * md / (big * big * big * big) +
                  6.0 * md * md * md / (small * small * small * small);
    double s = -std::log1p(rd / (Md * md)) / md + h / 2 - hp / 12 + hppp / 720;
    tail += vals[r] * s;
  }
  return std::complex<double>(re.value(), im.value()) + tail;
}

double L_product(u64 ell) {
  validate_ell(ell);
  auto chars = character_group(ell);
  std::complex<double> prod = 1.0;
  for (std::size_t k = 1; k < chars.size(); ++k)
    prod *= L_one(chars[k], LMethod::finite_closed_form);
  if (std::abs(prod.imag()) > 1e-9 * std::abs(prod) || prod.real() <= 0.0)
    throw cross_check_error("L product should be real positive", prod.real(),
                            prod.imag());
  return prod.real();
}

double c_ell(u64 ell) {
  validate_ell(ell);
  return static_cast<double>(ell) / static_cast<double>(2 * ell - 1);
}

ConstantResult eval_absolute(Family f, u64 ell, const PrimeTable& pt, u64 P,
                             unsigned threads) {
  validate_ell(ell);
  if (P < 1000) throw domain_error("prime bound must be at least 1000");
  ConstantResult r;
  r.family = f;
  r.ell = ell;
  r.prime_bound = P;
  switch (f) {
    case Family::D:
      r.method = EvalMethod::direct_truncation;
      r.value = truncated_value(f, ell, pt, P, threads);
      break;
    case Family::D5hat:
    case Family::D6hat:
      r.method = EvalMethod::l_decomposition;
      r.value = decomposed_value(f, ell, pt, P, threads);
      break;
    default:
      throw domain_error("family converges conditionally; use eval_conditional");
  }
  r.tail_estimate = tail_bound(f, ell, P, r.value);
  return r;
}

ConstantResult eval_absolute(Family f, u64 ell, u64 P, unsigned threads) {
  PrimeTable pt = sieve_primes(std::max<u64>(P, 1000));
  return eval_absolute(f, ell, pt, P, threads);
}

ConstantResult eval_conditional(Family f, u64 ell, const PrimeTable& pt, u64 P,
                                unsigned threads) {
  validate_ell(ell);
  if (f != Family::A && f != Family::B)
    throw domain_error("family converges absolutely; use eval_absolute");
  if (P < 10000) throw domain_error("prime bound must be at least 10000");
  double v1 = decomposed_value(f, ell, pt, P, threads);
  double v2 = truncated_value(f, ell, pt, P, threads);
  double delta = std::abs(v1 - v2) / std::abs(v1);
  if (delta > 1e-4)
    throw cross_check_error("conditional product cross-check out of tolerance",
                            v1, v2);
  ConstantResult r;
  r.family = f;
  r.ell = ell;
  r.prime_bound = P;
  r.method = EvalMethod::l_decomposition;
  r.value = v1;
  r.tail_estimate = tail_bound(f, ell, P, v1);
  r.cross_check_delta = delta;
  return r;
}

ConstantResult eval_conditional(Family f, u64 ell, u64 P, unsigned threads) {
  PrimeTable pt = sieve_primes(std::max<u64>(P, 1000));
  return eval_conditional(f, ell, pt, P, threads);
}

CResult eval_C_from(const ConstantResult& d_result) {
  if (d_result.family != Family::D)
    throw domain_error("leading constant needs a D-family result");
  u64 ell = d_result.ell;
  double el = static_cast<double>(ell);
  double a = std::pow(el, -1.0 + 1.0 / (el - 1));
  double b = std::pow(el, -1.0 - 1.0 / (el - 1));
  double scalar1 =
      std::pow(el - 1, -(el - 1)) * ((a - b) / el * c_ell(ell) + b);
  double form1 = scalar1 * d_result.value;

  double prod = factorial(ell - 2) * d_result.value;
  double scalar2 = std::pow(el, -1.0 / (el - 1)) /
                   (factorial(ell) * std::pow(el - 1, el - 2)) *
                   (1.0 + (std::pow(el, 2.0 / (el - 1)) - 1.0) / (2 * el - 1));
  double form2 = scalar2 * prod;

  double delta = std::abs(form1 - form2) / std::abs(form1);
  if (delta > 1e-12)
    throw cross_check_error("leading constant forms disagree", form1, form2);

  CResult c;
  c.ell = ell;
  c.prime_bound = d_result.prime_bound;
  c.form1 = form1;
  c.form2 = form2;
  c.delta = delta;
  c.tail_estimate = scalar1 * d_result.tail_estimate;
  return c;
}

CResult eval_C(u64 ell, const PrimeTable& pt, u64 P, unsigned threads) {
  return eval_C_from(eval_absolute(Family::D, ell, pt, P, threads));
}

CResult eval_C(u64 ell, u64 P, unsigned threads) {
  return eval_C_from(eval_absolute(Family::D, ell, P, threads));
}

RatioReport derived_ratio_check(u64 ell, u64 P, unsigned threads) {
  validate_ell(ell);
  PrimeTable pt = sieve_primes(std::max<u64>(P, 10000));
  ConstantResult d = eval_absolute(Family::D, ell, pt, P, threads);
  ConstantResult d5 = eval_absolute(Family::D5hat, ell, pt, P, threads);
  ConstantResult d6 = eval_absolute(Family::D6hat, ell, pt, P, threads);
  ConstantResult a = eval_conditional(Family::A, ell, pt, P, threads);
  ConstantResult b = eval_conditional(Family::B, ell, pt, P, threads);

  double el = static_cast<double>(ell);
  RatioReport r;
  r.ell = ell;
  r.P = P;
  r.a_conditional = a.value;
  r.a_via_d = d.value / ((el - 1) * d5.value);
  r.b_conditional = b.value;
  r.b_via_d = std::pow(el - 1, 1.0 - el) * d6.value / d.value;
  r.delta_a = std::abs(r.a_conditional - r.a_via_d) / std::abs(r.a_via_d);
  r.delta_b = std::abs(r.b_conditional - r.b_via_d) / std::abs(r.b_via_d);
  r.pass = r.delta_a <= 1e-4 && r.delta_b <= 1e-4;
  return r;
}

double mertens_third_check(double tau, const PrimeTable& pt, u64 X) {
  if (X < 100) throw domain_error("bound too small for the third-theorem check");
  if (pt.limit < X) throw domain_error("prime table smaller than the requested bound");
  kahan_sum lhs, companion;
  for (u64 p : pt.primes) {
    if (p > X) break;
    double pd = static_cast<double>(p);
    double l1 = std::log1p(tau / pd);
    lhs.add(l1);
    companion.add(l1 + tau * std::log1p(-1.0 / pd));
  }
  double loglog = std::log(std::log(static_cast<double>(X)));
  return std::exp(lhs.value() - (tau * GAMMA + tau * loglog + companion.value()));
}

double mertens_third_check(double tau, u64 X) {
  PrimeTable pt = sieve_primes(std::max<u64>(X, 100));
  return mertens_third_check(tau, pt, X);
}

std::string result_to_json(const ConstantResult& r) {
  nlohmann::json j;
  j["family"] = family_name(r.family);
  j["ell"] = r.ell;
  j["P"] = r.prime_bound;
  j["method"] = method_name(r.method);
  j["value"] = r.value;
  j["tail"] = r.tail_estimate;
  j["cross_check_delta"] = r.cross_check_delta;
  return j.dump();
}

std::string c_result_to_json(const CResult& r) {
  nlohmann::json j;
  j["family"] = "C";
  j["ell"] = r.ell;
  j["P"] = r.prime_bound;
  j["method"] = "dual-form";
  j["value"] = r.form1;
  j["form1"] = r.form1;
  j["form2"] = r.form2;
  j["tail"] = r.tail_estimate;
  j["cross_check_delta"] = r.delta;
  return j.dump();
}

std::string default_cache_dir() {
  const char* env = std::getenv("PURECENSUS_CACHE_DIR");
  if (env != nullptr && *env != '\0') return env;
  return ".purecensus-cache";
}

std::optional<ConstantResult> cache_load(const std::string& dir, Family f,
                                         u64 ell, u64 P, EvalMethod method) {
  std::filesystem::path path =
      std::filesystem::path(dir) / cache_file_name(f, ell, P, method);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    auto jf = family_from_name(j.at("family").get<std::string>());
    auto jm = method_from_name(j.at("method").get<std::string>());
    if (!jf || !jm || *jf != f || *jm != method ||
        j.at("ell").get<u64>() != ell || j.at("P").get<u64>() != P)
      return std::nullopt;
    ConstantResult r;
    r.family = f;
    r.ell = ell;
    r.prime_bound = P;
    r.method = method;
    r.value = j.at("value").get<double>();
    r.tail_estimate = j.at("tail").get<double>();
    r.cross_check_delta = j.at("cross_check_delta").get<double>();
    return r;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const ConstantResult& r) {
  std::filesystem::create_directories(dir);
  std::filesystem::path path =
      std::filesystem::path(dir) /
      cache_file_name(r.family, r.ell, r.prime_bound, r.method);
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write constants cache file");
  out << result_to_json(r) << "\n";
}

}  // namespace purecensus
