#include "phaseop/ml_expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "phaseop/errors.hpp"

namespace phaseop {

double h_constraint_value(double h) {
  const double w = h * h;
  return 2.0 * w * std::exp(0.5 * w);
}

bool satisfies_h_constraint(unsigned p, double h) { return h > 0.0 && h_constraint_value(h) < static_cast<double>(p); }

double select_h(unsigned p) {
  if (p == 0) throw ConstraintViolation("select_h: p must be positive");
  const double target = 0.9 * static_cast<double>(p);
  auto g = [](double w) { return 2.0 * w * std::exp(0.5 * w); };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) <= target) hi *= 2.0;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo);
}

MLParams make_ml_params(unsigned p, double h) {
  if (p == 0) throw ConstraintViolation("expansion order p must be positive");
  if (!satisfies_h_constraint(p, h)) {
    throw ConstraintViolation("h = " + std::to_string(h) + " violates 2 h^2 exp(h^2/2) < p for p = " +
                              std::to_string(p) + " (value " + std::to_string(h_constraint_value(h)) + ")");
  }
  return {p, h, 2.0 / (h * h), -std::expm1(-0.5 * h * h)};
}

MLParams auto_ml_params(unsigned p) { return make_ml_params(p, select_h(p)); }

std::size_t PolynomialSequence::degree() const {
  for (std::size_t k = aggregated.size(); k-- > 0;)
    if (!aggregated[k].is_zero()) return k;
  return 0;
}

void PolynomialSequence::recompute_aggregate() {
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.c.size());
  const mp::Bits wide = precision.bits() + 64;
  aggregated.assign(width, mp::Complex(precision.bits()));
  for (std::size_t k = 0; k < width; ++k) {
    mp::Complex acc(wide);
    for (const auto& row : rows)
      if (k < row.c.size()) acc += row.c[k];
    aggregated[k] = acc.rounded_to(precision.bits());
  }
}

PolynomialSequence ml_coefficients(const MLParams& params, Precision precision) {
  const unsigned p = params.p;
  make_ml_params(p, params.h);  // validates
  const mp::Bits bits = precision.bits();
  // The log-domain chain loses ~log2(|log magnitude|) bits in exp(); carry extra.
  const Precision inner(bits + 32);
  const mp::Bits ib = inner.bits();

  const mp::Real h(params.h, ib);
  const mp::Real w = h * h;
  const mp::Real ln_gamma = mp::log(mp::Real(2L, ib)) - mp::log(w);
  mp::Real theta(ib);
  {
    mp::Real half_w = w * mp::Real(-0.5, ib);
    mpfr_expm1(theta.get(), half_w.get(), MPFR_RNDN);
    theta = -theta;
  }
  const mp::Real ln_theta = mp::log(theta);

  const StirlingTable stirling(p);
  std::vector<mp::Real> ln_fact;
  ln_fact.reserve(p + 1);
  for (unsigned n = 0; n <= p; ++n) ln_fact.push_back(ln_factorial(n, inner));

  PolynomialSequence seq;
  seq.z0 = mp::Complex{mp::Real(1L, bits)};
  seq.domain_note = kLnDomainNote;
  seq.precision = precision;
  seq.rows.reserve(p);
  for (unsigned l = 1; l <= p; ++l) {
    CoefficientRow row;
    row.l = l;
    row.c.assign(p + 1, mp::Complex(bits));
    for (unsigned k = 1; k <= l; ++k) {
      // d_k^(l) / k, all factors positive.
      SignedLogReal d = SignedLogReal::from_log(1, ln_fact[k] - ln_fact[l]);
      d *= SignedLogReal::from_log(1, ln_gamma * mp::Real(static_cast<long>(k), ib));
      d *= SignedLogReal::from_log(1, ln_theta * mp::Real(static_cast<long>(l), ib));
      d *= to_signed_log(mp::Real(stirling(l, k), ib));
      d /= SignedLogReal::from_log(1, mp::log(mp::Real(static_cast<long>(k), ib)));
      mp::Real v = to_value(d, precision);
      if (k % 2 == 0) v = -v;
      row.c[k] = mp::Complex{std::move(v)};
    }
    seq.rows.push_back(std::move(row));
  }
  // Rows of one k share a sign here, so the l-sum is cancellation free.
  seq.recompute_aggregate();
  return seq;
}

mp::Complex scalar_partial_sum(const PolynomialSequence& seq, const mp::Complex& z) {
  const mp::Bits bits = seq.precision.bits();
  if (seq.aggregated.empty()) return mp::Complex(bits);
  const mp::Complex shift = z.rounded_to(std::max(bits, z.precision())) - seq.z0;
  mp::Complex acc = seq.aggregated.back();
  acc.widen_to(bits);
  for (std::size_t k = seq.aggregated.size() - 1; k-- > 0;) {
    acc *= shift;
    acc += seq.aggregated[k];
  }
  return acc;
}

cplx scalar_partial_sum(const PolynomialSequence& seq, cplx z) {
  return scalar_partial_sum(seq, mp::Complex(z, seq.precision.bits())).to_std();
}

PolynomialSequence monomial_sequence(const std::vector<cplx>& coeffs, cplx z0, Precision precision) {
  PolynomialSequence seq;
  seq.precision = precision;
  seq.z0 = mp::Complex(z0, precision.bits());
  seq.domain_note = "entire (polynomial)";
  CoefficientRow row;
  row.l = 0;
  for (const auto& c : coeffs) row.c.emplace_back(c, precision.bits());
  seq.rows.push_back(std::move(row));
  seq.recompute_aggregate();
  return seq;
}

nlohmann::json coefficients_to_json(const PolynomialSequence& seq, const MLParams& params) {
  nlohmann::json doc;
  doc["p"] = params.p;
  doc["h"] = params.h;
  doc["gamma"] = params.gamma;
  doc["theta"] = params.theta;
  const cplx z0 = seq.z0.to_std();
  doc["z0"] = {z0.real(), z0.imag()};
  nlohmann::json c = nlohmann::json::array();
  for (const auto& ck : seq.aggregated) {
    const cplx v = ck.to_std();
    c.push_back({v.real(), v.imag()});
  }
  doc["C"] = std::move(c);
  doc["domain"] = seq.domain_note;
  return doc;
}

namespace {

cplx parse_pair(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(std::string("coefficient JSON: ") + what + " must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PolynomialSequence sequence_from_json(const nlohmann::json& doc, Precision precision) {
  if (!doc.is_object() || !doc.contains("C") || !doc["C"].is_array()) {
    throw std::invalid_argument("coefficient JSON: missing array 'C'");
  }
  const cplx z0 = doc.contains("z0") ? parse_pair(doc["z0"], "z0") : cplx(0.0);
  std::vector<cplx> coeffs;
  for (const auto& e : doc["C"]) coeffs.push_back(parse_pair(e, "C entry"));
  PolynomialSequence seq = monomial_sequence(coeffs, z0, precision);
  if (doc.contains("domain") && doc["domain"].is_string()) seq.domain_note = doc["domain"].get<std::string>();
  return seq;
}

}  // namespace phaseop
