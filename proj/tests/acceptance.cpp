// Acceptance suite: one line per criterion, numeric verdict plus time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "phaseop/verifier.hpp"

using namespace phaseop;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;
};

void absorb(Outcome& o, const CheckRecord& r) {
  if (r.asserted && !r.passed) {
    o.passed = false;
    o.detail += " FAILED " + r.name + " (residual " + std::to_string(r.residual) + ", tolerance " +
                std::to_string(r.tolerance) + (r.note.empty() ? "" : ", " + r.note) + ");";
  }
}

void absorb(Outcome& o, const std::vector<CheckRecord>& rs) {
  for (const auto& r : rs) absorb(o, r);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::vector<std::pair<std::string, PolynomialSequence>> fixtures() {
  return {{"z", monomial_sequence({0.0, 1.0}, 0.0)},
          {"z^2", monomial_sequence({0.0, 0.0, 1.0}, 0.0)},
          {"cubic", monomial_sequence({0.5, {-1.0, 2.0}, 0.0, {0.0, 0.25}}, {0.5, 0.5})}};
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({1, "Stirling oracle, l <= 12", 1.0, [] {
                   Outcome o;
                   absorb(o, check_stirling_oracle(12));
                   o.detail += " table rows 0..12 match the expanded product";
                   return o;
                 }});

  out.push_back({2, "h constraint, p in {1,5,10,20,40,80}", 1.0, [] {
                   Outcome o;
                   const CheckRecord r = check_h_constraint({1, 5, 10, 20, 40, 80});
                   absorb(o, r);
                   o.detail += " max 2h^2e^{h^2/2}/p = " + sci(r.residual);
                   return o;
                 }});

  out.push_back({3, "scalar convergence trend, z in {0.5, 2, 1+i}", 10.0, [] {
                   Outcome o;
                   for (cplx z : {cplx(0.5), cplx(2.0), cplx(1.0, 1.0)}) {
                     const CheckRecord r = check_scalar_convergence(z, {5, 10, 20, 40, 80});
                     absorb(o, r);
                     o.detail += " " + r.name + " floor " + sci(r.residual) + ";";
                   }
                   return o;
                 }});

  out.push_back({4, "two-route equivalence, p <= 20, D <= 80", 30.0, [] {
                   Outcome o;
                   double worst = 0.0;
                   for (std::size_t d : {40u, 80u}) {
                     for (const auto& [label, seq] : fixtures()) {
                       const CheckRecord r = check_two_route(label, seq, d);
                       absorb(o, r);
                       worst = std::max(worst, r.residual);
                     }
                     for (unsigned p : {5u, 10u, 20u}) {
                       const CheckRecord r =
                           check_two_route("ln,p=" + std::to_string(p), ml_coefficients(auto_ml_params(p)), d);
                       absorb(o, r);
                       worst = std::max(worst, r.residual);
                     }
                   }
                   o.detail += " worst relative Frobenius " + sci(worst);
                   return o;
                 }});

  out.push_back({5, "operator/scalar consistency, alpha in {1, 2, 1+i}", 10.0, [] {
                   Outcome o;
                   double worst = 0.0;
                   for (cplx a : {cplx(1.0), cplx(2.0), cplx(1.0, 1.0)}) {
                     const auto rs = check_eigen_action(20, 40, a);
                     absorb(o, rs);
                     worst = std::max(worst, rs[0].residual);
                   }
                   const auto rs = check_eigen_action(40, 60, 2.0);
                   absorb(o, rs);
                   worst = std::max(worst, rs[0].residual);
                   o.detail += " worst relative residual " + sci(worst);
                   return o;
                 }});

  out.push_back({6, "commutators, p = 20, D = 80", 30.0, [] {
                   Outcome o;
                   double worst = 0.0;
                   auto seqs = fixtures();
                   seqs.emplace_back("ln,p=20", ml_coefficients(auto_ml_params(20)));
                   for (const auto& [label, seq] : seqs) {
                     for (const auto& r : check_commutators(label, seq, 80)) {
                       absorb(o, r);
                       worst = std::max(worst, r.residual);
                     }
                   }
                   o.detail += " worst interior-block residual " + sci(worst);
                   return o;
                 }});

  out.push_back({7, "identity resolution quadrature", 5.0, [] {
                   Outcome o;
                   const CheckRecord cells[] = {
                       check_identity_resolution(8, 1.0, 1.0, 32),
                       check_identity_resolution(16, 1.0, 0.0, 40),
                       check_identity_resolution(8, 0.5, 1.0, std::nullopt),
                   };
                   double worst = 0.0;
                   for (const auto& r : cells) {
                     absorb(o, r);
                     worst = std::max(worst, r.residual);
                     const std::size_t d = r.params["D"].get<std::size_t>();
                     if (r.params["M"].get<std::size_t>() < 2 * d + 2) {
                       o.passed = false;
                       o.detail += " node count below 2D+2;";
                     }
                   }
                   o.detail += " worst ||Q - I||_F " + sci(worst);
                   const CheckRecord conj = check_identity_resolution(8, 0.5, 1.0, std::nullopt, BraForm::conjugate_label);
                   o.detail += ", conjugate-bra deviation " + sci(conj.residual);
                   return o;
                 }});

  out.push_back({8, "conjugation exactness and zero diagonal/trace", 5.0, [] {
                   Outcome o;
                   const auto rs = check_number_conjugacy(20, 40, 2.0);
                   absorb(o, rs);
                   const auto fx = check_fock_exclusion(20, {20, 40, 80}, 0);
                   absorb(o, fx);
                   o.detail += " conjugation defect " + sci(rs[3].residual) + ", diagonal/trace max " +
                               sci(std::max(rs[4].residual, fx[0].residual));
                   return o;
                 }});

  out.push_back({9, "conjugacy action at alpha = 2 over p in {10, 20, 40}", 30.0, [] {
                   Outcome o;
                   std::vector<std::pair<double, double>> series;
                   for (unsigned p : {10u, 20u, 40u}) {
                     const auto rs = check_number_conjugacy(p, 40, 2.0);
                     absorb(o, rs);
                     series.emplace_back(p, rs[0].residual);
                     o.detail += " p=" + std::to_string(p) + ": " + sci(rs[0].residual) + ";";
                   }
                   absorb(o, check_decreasing("conjugacy trend", "", series));
                   return o;
                 }});

  out.push_back({10, "phase eigenstates", 30.0, [] {
                   Outcome o;
                   absorb(o, check_phase_eigenstate(20, 40, kPi / 3)[0]);
                   std::vector<std::pair<double, double>> series;
                   for (unsigned p : {5u, 10u, 20u, 40u, 80u}) {
                     const auto rs = check_phase_eigenstate(p, 40, kPi / 2);
                     absorb(o, rs);
                     series.emplace_back(p, rs[1].residual);
                   }
                   absorb(o, check_decreasing("phase trend", "", series));
                   o.detail += " residual at pi/2 from " + sci(series.front().second) + " (p=5) to " +
                               sci(series.back().second) + " (p=80)";
                   return o;
                 }});

  out.push_back({11, "time evolution, D = 50", 1.0, [] {
                   Outcome o;
                   const CheckRecord r = check_time_evolution(50, -kPi / 4, kPi / 2);
                   absorb(o, r);
                   o.detail += " component residual " + sci(r.residual);
                   return o;
                 }});

  out.push_back({12, "overlap formula", 5.0, [] {
                   Outcome o;
                   absorb(o, check_overlap_formula(1000, kPi, 1e-12));
                   absorb(o, check_overlap_formula(1000, kPi / 2, 1e-12));
                   std::vector<std::pair<double, double>> series;
                   for (std::size_t d : {100u, 1000u, 10000u}) {
                     CheckRecord r = check_overlap_formula(d, 1.0, 1e-2);
                     if (d == 10000) absorb(o, r);
                     series.emplace_back(static_cast<double>(d), r.residual);
                   }
                   absorb(o, check_decreasing("overlap trend", "", series));
                   o.detail += " residual at delta=1, D=1e4: " + sci(series.back().second);
                   return o;
                 }});

  return out;
}

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& c : criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string(" error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.passed && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s %2d %s [%.2f s / %.0f s%s]%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, c.budget_s,
                in_time ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
