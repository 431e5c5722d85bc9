#include "permutangle/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "permutangle/error.hpp"
#include "permutangle/measures.hpp"

namespace permutangle {

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PERMUTANGLE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first;
  std::mutex first_mu;
  auto work = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(first_mu);
        if (!first) first = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

std::string scatter_family(const Dims& dims) {
  std::string s = "haar_";
  for (std::size_t d : dims) s += std::to_string(d);
  return s;
}

namespace {

const std::vector<Dims>& scatter_dims() {
  static const std::vector<Dims> d = {{2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 2, 4}};
  return d;
}

void require_config(const CampaignConfig& c) {
  if (c.n < 1) throw DomainError("campaign: n must be at least 1");
  if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) throw DomainError("campaign: epsilon must be finite and >= 0");
}

MeasureRecord two_qubit_record(std::size_t index, const DensityMatrix& rho, const std::string& family) {
  MeasureRecord r;
  r.index = index;
  r.rank = static_cast<int>(numerical_rank(rho));
  r.c12 = concurrence(rho);
  r.n12 = negativity(rho);
  r.r12 = permutangle::r12(rho);
  r.family = family;
  return r;
}

EigenTriple ansatz1_eigvecs() { return {bell::psi_plus(), bell::psi_minus(), bell::phi_plus()}; }

}  // namespace

std::vector<MeasureRecord> scatter(const CampaignConfig& config) {
  require_config(config);
  const auto& allowed = scatter_dims();
  if (std::find(allowed.begin(), allowed.end(), config.dims) == allowed.end()) {
    throw DomainError("scatter: dims must be one of 2,2 / 2,2,2 / 2,2,3 / 2,2,4");
  }
  const std::string family = scatter_family(config.dims);
  const bool three_qubit = config.dims == Dims{2, 2, 2};
  std::vector<MeasureRecord> out(config.n);
  parallel_for(config.n, worker_count(config.threads), [&](std::size_t i) {
    Rng rng(config.seed, i);
    const PureState psi = haar_random_pure(config.dims, rng);
    const DensityMatrix rho = config.dims.size() == 2 ? DensityMatrix::from_pure(psi) : reduce(psi, {0, 1});
    MeasureRecord r = two_qubit_record(i, rho, family);
    if (three_qubit) r.tau = three_tangle(psi);
    out[i] = std::move(r);
  });
  return out;
}

const std::vector<std::string>& perturbation_kinds() {
  static const std::vector<std::string> k = {"ansatz1_fig4", "werner_fig5", "mems1_fig8"};
  return k;
}

std::vector<MeasureRecord> perturbation_campaign(const std::string& kind, const CampaignConfig& config) {
  require_config(config);
  const auto& kinds = perturbation_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
    throw DomainError("perturbation_campaign: unknown kind '" + kind + "'");
  const double eps = config.epsilon;
  std::vector<MeasureRecord> out(config.n);
  parallel_for(config.n, worker_count(config.threads), [&](std::size_t i) {
    Rng rng(config.seed, i);
    if (kind == "ansatz1_fig4") {
      const double p = rng.uniform();
      const auto base = std::get<DensityMatrix>(make_state({"ansatz1", {{"p", p}}}));
      const DensityMatrix noise = random_fixed_eigvecs(ansatz1_eigvecs(), rng);
      out[i] = two_qubit_record(i, mix(base, noise, eps), kind);
    } else if (kind == "werner_fig5") {
      const double p = rng.uniform();
      const auto base = std::get<DensityMatrix>(make_state({"werner", {{"p", p}, {"fiducial", 1.0}}}));
      const DensityMatrix noise = reduce(haar_random_pure({2, 2, 4}, rng), {0, 1});
      out[i] = two_qubit_record(i, mix(base, noise, eps), kind);
    } else {
      const double c = rng.uniform();
      const auto base = std::get<PureState>(make_state({"mems1_purification", {{"c", c}}}));
      const PureState noisy = perturb_pure(base, haar_random_pure({2, 2, 2}, rng), eps);
      MeasureRecord r = two_qubit_record(i, reduce(noisy, {0, 1}), kind);
      r.tau = three_tangle(noisy);
      out[i] = std::move(r);
    }
  });
  return out;
}

// ---- regions ----

namespace {

double need(const std::optional<double>& v, const char* field, const std::string& region) {
  if (!v) throw DomainError("verify: region " + region + " needs field " + field);
  return *v;
}

double r3_upper(double x) { return std::pow(x, 0.25) * std::sqrt((1.0 + x) / 2.0); }
double n3_upper(double x) { return std::pow(x, 0.25) * std::pow((2.0 + x) / 3.0, 0.75); }
double r4_upper(double x) { return std::pow((2.0 * x + 1.0) / 3.0, 0.75); }
double n2_lower(double r) { return std::sqrt((1.0 - r) * (1.0 - r) + r * r) - (1.0 - r); }

constexpr double kZeroBranch = 1e-9;

}  // namespace

const std::vector<std::string>& region_tags() {
  static const std::vector<std::string> t = {"r_unit_interval", "cr_rank2", "r_ge_c",          "cr_rank3",
                                             "cr_rank4",        "nr_rank2", "nr_rank3",        "nr_rank4",
                                             "tangle_identity", "m3ts_max", "witness", "separable_bound"};
  return t;
}

double region_tolerance(const std::string& region) {
  if (region == "tangle_identity" || region == "m3ts_max") return 1e-8;
  return 1e-9;
}

double region_margin(const MeasureRecord& rec, const std::string& region) {
  const double b = separable_r12_bound();
  if (region == "r_unit_interval") {
    const double r = need(rec.r12, "r12", region);
    return std::max(-r, r - 1.0);
  }
  if (region == "separable_bound") return need(rec.r12, "r12", region) - b;
  if (region == "witness") {
    const double r = need(rec.r12, "r12", region), c = need(rec.c12, "c12", region);
    if (r > b) return c > 0.0 ? -c : r - b;
    return r - b;
  }
  if (region == "cr_rank2" || region == "r_ge_c" || region == "cr_rank3" || region == "cr_rank4" ||
      region == "tangle_identity" || region == "m3ts_max") {
    const double c = need(rec.c12, "c12", region);
    if (region == "m3ts_max") return need(rec.tau, "tau", region) - (1.0 - c * c);
    const double r = need(rec.r12, "r12", region);
    if (region == "cr_rank2") return std::max(c - r, r - std::sqrt(c));
    if (region == "r_ge_c") return c - r;
    if (region == "cr_rank3") return c <= kZeroBranch ? r - b : std::max(c - r, r - r3_upper(c));
    if (region == "cr_rank4") return std::max(c - r, r - r4_upper(c));
    const double t = need(rec.tau, "tau", region);
    return std::abs(r * r * r * r - c * c * (c * c + t));
  }
  if (region == "nr_rank2" || region == "nr_rank3" || region == "nr_rank4") {
    const double n = need(rec.n12, "n12", region), r = need(rec.r12, "r12", region);
    if (region == "nr_rank2") return std::max(n2_lower(r) - n, n - r);
    if (region == "nr_rank3") return n <= kZeroBranch ? r - b : std::max(n - r, r - n3_upper(n));
    return std::max(n - r, r - r4_upper(n));
  }
  throw DomainError("verify: unknown region '" + region + "'");
}

ViolationReport verify(const std::vector<MeasureRecord>& records, const std::string& region) {
  ViolationReport rep;
  rep.region = region;
  rep.tolerance = region_tolerance(region);
  rep.total = records.size();
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  if (records.empty()) region_margin(MeasureRecord{0, 0, 0.0, 0.0, 0.0, 0.0, ""}, region);  // rejects unknown tags
  for (const auto& r : records) {
    const double m = region_margin(r, region);
    rep.worst_margin = std::max(rep.worst_margin, m);
    if (m > rep.tolerance) {
      ++rep.violations;
      if (rep.offending.size() < kMaxOffending) rep.offending.push_back(r);
    }
  }
  return rep;
}

nlohmann::json to_json(const ViolationReport& report) {
  nlohmann::json j;
  j["region"] = report.region;
  j["tolerance"] = report.tolerance;
  j["total"] = report.total;
  j["violations"] = report.violations;
  j["worst_margin"] = std::isfinite(report.worst_margin) ? nlohmann::json(report.worst_margin) : nlohmann::json(nullptr);
  j["offending"] = records_to_json(report.offending);
  return j;
}

// ---- figures ----

namespace {

Dims dims_from_family(const std::string& family) {
  Dims d;
  for (char ch : family.substr(5)) d.push_back(static_cast<std::size_t>(ch - '0'));
  return d;
}

bool is_scatter_family(const std::string& tag) { return tag.rfind("haar_", 0) == 0; }

const std::vector<FigurePlan>& figure_plans() {
  const std::vector<std::string> cr_all = {"cr_rank2_upper", "cr_rank2_lower", "cr_rank3", "cr_rank3_segment",
                                           "cr_rank4"};
  const std::vector<std::string> nr_all = {"nr_rank2_upper", "nr_rank2_lower", "nr_rank3", "nr_rank3_segment",
                                           "nr_rank4"};
  static const std::vector<FigurePlan> plans = {
      {1, 10000, {"haar_222"}, {"cr_rank2_upper", "cr_rank2_lower"}, {{"cr_rank2", "haar_222", true}}},
      {2,
       10000,
       {"haar_222"},
       {"m3ts_tau"},
       {{"m3ts_max", "haar_222", true}, {"tangle_identity", "haar_222", true}}},
      {3,
       10000,
       {"haar_223", "haar_224"},
       cr_all,
       {{"cr_rank3", "haar_223", true}, {"cr_rank4", "haar_224", true}, {"cr_rank2", "haar_224", false}}},
      {4, 20000, {"ansatz1_fig4"}, {"cr_rank2_upper", "cr_rank3", "cr_rank3_segment"}, {{"cr_rank3", "ansatz1_fig4", true}}},
      {5, 20000, {"werner_fig5"}, {"cr_rank2_upper", "cr_rank4"}, {{"cr_rank4", "werner_fig5", true}}},
      {6, 0, {}, cr_all, {}},
      {7, 20000, {"haar_222"}, {"nr_rank2_upper", "nr_rank2_lower"}, {{"nr_rank2", "haar_222", true}}},
      {8, 10000, {"mems1_fig8"}, {"nr_rank2_upper", "nr_rank2_lower"}, {{"nr_rank2", "mems1_fig8", true}}},
      {9,
       20000,
       {"haar_223"},
       {"nr_rank2_upper", "nr_rank2_lower", "nr_rank3", "nr_rank3_segment"},
       {{"nr_rank3", "haar_223", true}, {"nr_rank2", "haar_223", false}}},
      {10,
       20000,
       {"haar_224"},
       {"nr_rank2_upper", "nr_rank2_lower", "nr_rank4"},
       {{"nr_rank4", "haar_224", true}, {"nr_rank2", "haar_224", false}}},
      {11, 0, {}, nr_all, {}},
  };
  return plans;
}

}  // namespace

const FigurePlan& figure_plan(int fig_id) {
  for (const auto& p : figure_plans())
    if (p.id == fig_id) return p;
  throw DomainError("figure: id must be between 1 and 11");
}

void write_curve_csv(std::ostream& out, const std::string& tag, const std::vector<CurvePoint>& points) {
  const CurveInfo& info = curve_info(tag);
  out << info.x_name << ',' << info.y_name << '\n';
  for (const auto& p : points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

FigureBundle figure_dataset(int fig_id, const FigureConfig& config) {
  const FigurePlan& plan = figure_plan(fig_id);
  std::filesystem::create_directories(config.out_dir);
  const std::string stem = "fig" + std::to_string(fig_id);
  FigureBundle bundle;
  nlohmann::json meta;
  meta["figure"] = fig_id;
  meta["seed"] = config.seed;
  meta["curve_points"] = config.curve_points;

  const std::size_t n = config.n > 0 ? config.n : plan.default_n;
  std::vector<MeasureRecord> records;
  nlohmann::json campaigns = nlohmann::json::array();
  for (std::size_t k = 0; k < plan.campaigns.size(); ++k) {
    const std::string& tag = plan.campaigns[k];
    CampaignConfig cc;
    cc.n = n;
    cc.seed = config.seed + k;
    cc.threads = config.threads;
    cc.epsilon = config.epsilon;
    nlohmann::json cj{{"family", tag}, {"n", n}, {"seed", cc.seed}};
    std::vector<MeasureRecord> part;
    if (is_scatter_family(tag)) {
      cc.dims = dims_from_family(tag);
      cj["dims"] = cc.dims;
      part = scatter(cc);
    } else {
      cc.kind = tag;
      cj["epsilon"] = cc.epsilon;
      cj["base_parameter"] = "uniform over the base family's domain";
      part = perturbation_campaign(tag, cc);
    }
    // Indices run over the whole file so rows stay unique.
    for (auto& r : part) r.index += records.size();
    records.insert(records.end(), part.begin(), part.end());
    campaigns.push_back(cj);
  }
  meta["campaigns"] = campaigns;

  if (!plan.campaigns.empty()) {
    const auto path = config.out_dir / (stem + "_scatter.csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("figure: cannot write " + path.string());
    write_records_csv(f, records);
    bundle.files.push_back(path);
  }

  nlohmann::json curves = nlohmann::json::array();
  for (const auto& tag : plan.curves) {
    const auto path = config.out_dir / (stem + "_curve_" + tag + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("figure: cannot write " + path.string());
    write_curve_csv(f, tag, boundary_curve(tag, default_grid(tag, config.curve_points)));
    bundle.files.push_back(path);
    curves.push_back(tag);
  }
  meta["curves"] = curves;

  nlohmann::json checks = nlohmann::json::array();
  for (const auto& chk : plan.checks) {
    std::vector<MeasureRecord> subset;
    for (const auto& r : records)
      if (r.family == chk.subset) subset.push_back(r);
    const ViolationReport rep = verify(subset, chk.region);
    nlohmann::json j = to_json(rep);
    j.erase("offending");
    j["subset"] = chk.subset;
    j["must_hold"] = chk.must_hold;
    checks.push_back(j);
  }
  meta["checks"] = checks;

  const auto meta_path = config.out_dir / (stem + "_meta.json");
  std::ofstream f(meta_path, std::ios::binary);
  if (!f) throw Error("figure: cannot write " + meta_path.string());
  f << meta.dump(2) << '\n';
  bundle.files.push_back(meta_path);
  bundle.meta = std::move(meta);
  return bundle;
}

}  // namespace permutangle
