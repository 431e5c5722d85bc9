// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "permutangle/experiments.hpp"
#include "permutangle/families.hpp"
#include "permutangle/measures.hpp"
#include "permutangle/permutations.hpp"

using namespace permutangle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string count(std::size_t n) { return std::to_string(n); }

std::vector<MeasureRecord> scatter_of(Dims dims, std::size_t n, std::uint64_t seed) {
  CampaignConfig c;
  c.dims = std::move(dims);
  c.n = n;
  c.seed = seed;
  return scatter(c);
}

std::vector<MeasureRecord> perturb_of(const std::string& kind, std::size_t n, std::uint64_t seed, std::size_t threads = 0) {
  CampaignConfig c;
  c.kind = kind;
  c.n = n;
  c.seed = seed;
  c.epsilon = 0.51;
  c.threads = threads;
  return perturbation_campaign(kind, c);
}

void zero_check(Outcome& o, const std::vector<MeasureRecord>& recs, const std::string& region,
                const std::string& label) {
  const ViolationReport r = verify(recs, region);
  o.require(r.violations == 0, label + " " + region + " " + count(r.violations) + "/" + count(r.total) +
                                   " worst " + fmt("%.3g", r.worst_margin));
}

void positive_check(Outcome& o, const std::vector<MeasureRecord>& recs, const std::string& region,
                    const std::string& label) {
  const ViolationReport r = verify(recs, region);
  o.require(r.violations > 0, label + " " + region + " violated by " + count(r.violations) + "/" + count(r.total));
}

DensityMatrix random_rank(std::size_t r, Rng& rng) {
  if (r == 1) return DensityMatrix::from_pure(haar_random_pure({2, 2}, rng));
  return reduce(haar_random_pure({2, 2, r}, rng), {0, 1});
}

// ---- 1 ----
Outcome closed_form_agreement() {
  const auto t0 = Clock::now();
  Outcome o;
  double worst_all = 0;
  for (const std::string& family : family_tags()) {
    double worst = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng(1001, i);
      const FamilySpec s = random_spec(family, rng);
      const MeasureMap cf = closed_form_measures(s);
      const MeasureMap nm = numeric_measures(make_state(s));
      for (const auto& [k, v] : cf)
        if (nm.count(k)) worst = std::max(worst, std::abs(nm.at(k) - v));
    }
    if (worst > 1e-9) o.require(false, family + " worst " + fmt("%.3g", worst));
    worst_all = std::max(worst_all, worst);
  }
  const double dt = seconds_since(t0);
  o.require(worst_all <= 1e-9, count(family_tags().size()) + " families x 1000, worst diff " + fmt("%.3g", worst_all));
  o.require(dt < 30.0, "runtime " + fmt("%.1f", dt) + " s");
  return o;
}

// ---- 2 ----
Outcome tangle_identity() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto recs = scatter_of({2, 2, 2}, 10000, 2002);
  zero_check(o, recs, "tangle_identity", "haar_222");
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + fmt("%.1f", dt) + " s");
  return o;
}

// Shared big scatter sets for criteria 3 to 6.
struct Scatters {
  std::vector<MeasureRecord> s222, s223, s224, s223_small, s224_small;
};
const Scatters& scatters() {
  static const Scatters s{scatter_of({2, 2, 2}, 100000, 3003), scatter_of({2, 2, 3}, 100000, 4004),
                          scatter_of({2, 2, 4}, 100000, 4005), scatter_of({2, 2, 3}, 10000, 5005),
                          scatter_of({2, 2, 4}, 10000, 5006)};
  return s;
}

// ---- 3 ----
Outcome rank2_region() {
  Outcome o;
  zero_check(o, scatters().s222, "cr_rank2", "haar_222");
  return o;
}

// ---- 4 ----
Outcome rank34_envelopes() {
  Outcome o;
  zero_check(o, scatters().s223, "cr_rank3", "haar_223");
  zero_check(o, scatters().s224, "cr_rank4", "haar_224");
  zero_check(o, perturb_of("ansatz1_fig4", 20000, 4006), "cr_rank3", "ansatz1_fig4");
  zero_check(o, perturb_of("werner_fig5", 20000, 4007), "cr_rank4", "werner_fig5");
  return o;
}

// ---- 5 ----
Outcome negativity_regions() {
  Outcome o;
  zero_check(o, scatters().s222, "nr_rank2", "haar_222");
  zero_check(o, perturb_of("mems1_fig8", 10000, 5007), "nr_rank2", "mems1_fig8");
  positive_check(o, scatters().s223_small, "nr_rank2", "haar_223");
  positive_check(o, scatters().s224_small, "nr_rank2", "haar_224");
  zero_check(o, scatters().s223, "nr_rank3", "haar_223");
  zero_check(o, scatters().s224, "nr_rank4", "haar_224");
  return o;
}

// ---- 6 ----
DensityMatrix separable_sample(Rng& rng, std::size_t kind) {
  switch (kind) {
    case 0: {  // up to three product terms
      const std::size_t m = 1 + rng.next_u64() % 3;
      ComplexMatrix sum(4, 4);
      double wsum = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const double w = rng.uniform();
        wsum += w;
        sum += Complex(w) * kron(reduce(haar_random_pure({2, 2}, rng), {0}).matrix(),
                                 reduce(haar_random_pure({2, 2}, rng), {0}).matrix());
      }
      return DensityMatrix({2, 2}, Complex(1.0 / wsum) * sum);
    }
    case 1:
      return std::get<DensityMatrix>(make_state(random_spec("cq_state", rng)));
    case 2: {
      const double p = rng.uniform(0.0, 1.0 / 3.0);
      return std::get<DensityMatrix>(make_state({"werner", {{"p", p}, {"fiducial", double(rng.next_u64() & 1U)}}}));
    }
    default: {
      // Bell-diagonal with every weight at most 1/2 is separable.
      for (;;) {
        double e[4], s = 0;
        for (double& x : e) s += (x = -std::log(1.0 - rng.uniform()));
        bool ok = true;
        for (double& x : e) ok = ok && (x /= s) <= 0.5;
        if (ok)
          return std::get<DensityMatrix>(
              make_state({"bell_diagonal", {{"p1", e[0]}, {"p2", e[1]}, {"p3", e[2]}, {"p4", e[3]}}}));
      }
    }
  }
}

Outcome witness() {
  Outcome o;
  const std::size_t n = 100000;
  std::vector<double> r(n), c(n);
  parallel_for(n, 0, [&](std::size_t i) {
    Rng rng(6006, i);
    const DensityMatrix rho = separable_sample(rng, i % 4);
    r[i] = r12(rho);
    c[i] = concurrence(rho);
  });
  const double bound = separable_r12_bound();
  const double rmax = *std::max_element(r.begin(), r.end());
  std::size_t above = 0, above_without_c = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (r[i] > bound) {
      ++above;
      if (!(c[i] > 0)) ++above_without_c;
    }
  o.require(rmax <= bound + 1e-9, count(n) + " separable, max R " + fmt("%.12f", rmax) + " vs bound " + fmt("%.12f", bound));
  o.require(above_without_c == 0, count(above) + " separable above bound without C > 0");
  // Among all sampled two-qubit states, exceeding the bound implies entanglement.
  std::size_t checked = 0, bad = 0;
  for (const auto* set : {&scatters().s222, &scatters().s223, &scatters().s224}) {
    const ViolationReport rep = verify(*set, "witness");
    checked += rep.total;
    bad += rep.violations;
  }
  o.require(bad == 0, "witness holds on " + count(checked) + " Haar samples");
  return o;
}

// ---- 7 ----
double tau_on_manifold(double l0, Complex z, double c12, double c13) {
  CanonicalParams p;
  p.lambda[0] = l0;
  p.lambda[1] = std::abs(z);
  p.lambda[2] = c13 / (2 * l0);
  p.lambda[3] = c12 / (2 * l0);
  p.lambda[4] = std::sqrt(1 - l0 * l0 - std::norm(z) - p.lambda[2] * p.lambda[2] - p.lambda[3] * p.lambda[3]);
  p.theta = std::arg(z);
  return three_tangle(canonical_state(p));
}

Outcome m3ts_maximality() {
  Outcome o;
  zero_check(o, scatter_of({2, 2, 2}, 10000, 7007), "m3ts_max", "haar_222");
  const double h = 1e-4, l0 = 1 / std::numbers::sqrt2;
  double worst = 0;
  std::size_t points = 0;
  for (std::uint64_t i = 0; points < 200; ++i) {
    Rng rng(7008, i);
    const FamilySpec s = random_spec("m3ts_general", rng);
    const double c12 = s.params.at("c12"), c13 = s.params.at("c13");
    if (c12 * c12 + c13 * c13 > 0.95) continue;
    ++points;
    auto t = [&](double dl, Complex dz) { return tau_on_manifold(l0 + dl, dz, c12, c13); };
    const double g0 = (t(h, 0.0) - t(-h, 0.0)) / (2 * h);
    const double gx = (t(0.0, h) - t(0.0, -h)) / (2 * h);
    const double gy = (t(0.0, Complex(0, h)) - t(0.0, Complex(0, -h))) / (2 * h);
    worst = std::max(worst, std::sqrt(g0 * g0 + gx * gx + gy * gy));
  }
  o.require(worst <= 1e-6, "generalized m3ts gradient norm " + fmt("%.3g", worst) + " over " + count(points) + " points");
  return o;
}

// ---- 8 ----
Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(8008, 0);
  std::size_t table_mismatch = 0;
  for (std::size_t d1 = 1; d1 <= 4; ++d1)
    for (std::size_t d2 = 1; d2 <= 4; ++d2)
      for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = oracle::random_matrix(d1 * d2, d1 * d2, rng);
        for (std::size_t sub : {0u, 1u})
          if (!(partial_transpose(m, d1, d2, sub) == oracle::apply_table(m, oracle::pt_table(d1, d2, sub)))) ++table_mismatch;
        if (d1 == d2 && !(realign(m, d1, d2).matrix == oracle::apply_table(m, oracle::realign_table(d1)))) ++table_mismatch;
      }
  o.require(table_mismatch == 0, "index tables exact (" + count(table_mismatch) + " mismatches)");

  double det_worst = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (int t = 0; t < 200; ++t) {
      const ComplexMatrix m = oracle::random_matrix(n, n, rng);
      const Complex ref = oracle::cofactor_det(m);
      det_worst = std::max(det_worst, std::abs(determinant(m) - ref) / std::max(1.0, std::abs(ref)));
    }
  o.require(det_worst <= 1e-12, "determinant vs cofactor " + fmt("%.3g", det_worst));

  double conc_worst = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng r(8009, i);
    const PureState psi = haar_random_pure({2, 2}, r);
    conc_worst = std::max(conc_worst, std::abs(concurrence(DensityMatrix::from_pure(psi)) - oracle::pure_concurrence(psi)));
  }
  o.require(conc_worst <= 1e-10, "concurrence vs 2|ad-bc| " + fmt("%.3g", conc_worst));

  double r_worst = 0;
  for (std::size_t rank = 1; rank <= 4; ++rank)
    for (std::uint64_t i = 0; i < 2500; ++i) {
      Rng r(8010 + rank, i);
      const DensityMatrix rho = random_rank(rank, r);
      r_worst = std::max(r_worst, std::abs(r12(rho) - r12_via_singular_values(rho)));
    }
  o.require(r_worst <= 1e-9, "R by determinant vs singular values " + fmt("%.3g", r_worst));
  return o;
}

// ---- 9 ----
double spectrum_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0;
  for (const Complex& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex x, Complex y) { return std::abs(x - z) < std::abs(y - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

Outcome invariance() {
  Outcome o;
  double worst = 0;
  for (std::size_t rank = 1; rank <= 4; ++rank)
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng(9009 + rank, i);
      const DensityMatrix rho = random_rank(rank, rng);
      const DensityMatrix rot = apply_local_unitaries(rho, haar_unitary(2, rng), haar_unitary(2, rng));
      worst = std::max({worst, std::abs(r12(rho) - r12(rot)), std::abs(concurrence(rho) - concurrence(rot)),
                        std::abs(negativity(rho) - negativity(rot))});
      const auto a = eig_hermitian(link_product(rho).matrix);
      const auto b = eig_hermitian(link_product(rot).matrix);
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
  o.require(worst <= 1e-8, "R/C/N and link spectra over 4 ranks x 1000, worst " + fmt("%.3g", worst));

  double pworst = 0;
  const std::vector<std::vector<std::size_t>> paths{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {0, 2, 1}, {0, 1, 0, 2}};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(9100, i);
    const PureState psi = haar_random_pure({2, 2, 2}, rng);
    const std::vector<ComplexMatrix> us{haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)};
    const PureState rot = apply_local_unitaries(psi, us);
    for (const auto& p : paths)
      pworst = std::max(pworst, spectrum_distance(path_invariant_spectrum(psi, p), path_invariant_spectrum(rot, p)));
  }
  o.require(pworst <= 1e-8, "path spectra over 1000 three-qubit states, worst " + fmt("%.3g", pworst));
  return o;
}

// ---- 10 ----
std::string csv_of(const std::vector<MeasureRecord>& r) {
  std::ostringstream out;
  write_records_csv(out, r);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

Outcome determinism() {
  Outcome o;
  std::size_t campaigns = 0, mismatches = 0;
  auto compare = [&](const std::function<std::string(std::size_t)>& run) {
    ++campaigns;
    const std::string ref = run(1);
    for (std::size_t t : {1u, 2u, 8u})
      if (run(t) != ref) ++mismatches;
  };
  for (const Dims& d : {Dims{2, 2}, Dims{2, 2, 2}, Dims{2, 2, 3}, Dims{2, 2, 4}})
    compare([&](std::size_t t) {
      CampaignConfig c;
      c.dims = d;
      c.n = 5000;
      c.seed = 10010;
      c.threads = t;
      return csv_of(scatter(c));
    });
  for (const auto& kind : perturbation_kinds())
    compare([&](std::size_t t) { return csv_of(perturb_of(kind, 5000, 10011, t)); });

  const auto dir = std::filesystem::temp_directory_path() / "permutangle_acceptance_figs";
  for (int id = 1; id <= 11; ++id)
    compare([&](std::size_t t) {
      std::filesystem::remove_all(dir);
      FigureConfig c;
      c.out_dir = dir;
      c.n = 1000;
      c.threads = t;
      const FigureBundle b = figure_dataset(id, c);
      std::string all;
      for (const auto& f : b.files) all += f.filename().string() + "\n" + slurp(f);
      return all;
    });
  std::filesystem::remove_all(dir);
  o.require(mismatches == 0, count(campaigns) + " campaigns x threads {1,2,8} plus a repeat, " + count(mismatches) +
                                 " differing outputs");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "closed-form agreement", closed_form_agreement},
      {2, "R^4 = C^2 (C^2 + tau) on Haar three-qubit states", tangle_identity},
      {3, "rank-2 region C <= R <= sqrt(C)", rank2_region},
      {4, "rank-3/4 envelopes and perturbation campaigns", rank34_envelopes},
      {5, "negativity regions", negativity_regions},
      {6, "separability witness", witness},
      {7, "maximally 3-tangled states", m3ts_maximality},
      {8, "oracle equivalence", oracle_equivalence},
      {9, "local-unitary invariance", invariance},
      {10, "determinism across runs and worker counts", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
