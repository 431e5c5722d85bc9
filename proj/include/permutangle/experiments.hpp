#pragma once

// Sampling campaigns, region checks and figure datasets.
//
// Sample i of a campaign draws from Rng(seed, i) and lands in slot i of the
// output, so results are identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permutangle/families.hpp"
#include "permutangle/records.hpp"
#include "permutangle/state.hpp"

namespace permutangle {

struct CampaignConfig {
  std::string kind = "scatter";  // scatter, ansatz1_fig4, werner_fig5, mems1_fig8
  std::size_t n = 1;
  std::uint64_t seed = 0;
  Dims dims;                // scatter only
  double epsilon = 0.51;    // perturbation campaigns only
  std::size_t threads = 0;  // 0: PERMUTANGLE_THREADS, else hardware concurrency
};

/// Resolves the worker count: explicit request, then PERMUTANGLE_THREADS,
/// then std::thread::hardware_concurrency().
std::size_t worker_count(std::size_t requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

/// "haar_222" style tag for a dims list.
std::string scatter_family(const Dims& dims);

/// Haar pure states on (2,2), (2,2,2), (2,2,3) or (2,2,4), reduced to the two
/// qubits. tau is filled only for (2,2,2).
std::vector<MeasureRecord> scatter(const CampaignConfig& config);

/// ansatz1_fig4: ansatz1(p) mixed with a random state sharing its eigenvectors.
/// werner_fig5:  psi- Werner(p) mixed with the two-qubit reduction of a Haar (2,2,4) state.
/// mems1_fig8:   the MEMS-I purification perturbed by a Haar three-qubit state.
/// p or c is uniform over its domain for every sample.
std::vector<MeasureRecord> perturbation_campaign(const std::string& kind, const CampaignConfig& config);

const std::vector<std::string>& perturbation_kinds();

struct ViolationReport {
  std::string region;
  double tolerance = 0.0;
  std::size_t total = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // largest signed distance outside the region
  std::vector<MeasureRecord> offending;  // first few violators
};

inline constexpr std::size_t kMaxOffending = 10;

/// Regions: r_unit_interval cr_rank2 r_ge_c cr_rank3 cr_rank4 nr_rank2
/// nr_rank3 nr_rank4 tangle_identity m3ts_max witness separable_bound.
const std::vector<std::string>& region_tags();

/// Margin of one record (positive means outside). DomainError when a field
/// the region needs is missing.
double region_margin(const MeasureRecord& r, const std::string& region);

double region_tolerance(const std::string& region);

ViolationReport verify(const std::vector<MeasureRecord>& records, const std::string& region);

nlohmann::json to_json(const ViolationReport& report);

struct FigureConfig {
  std::filesystem::path out_dir = ".";
  std::size_t n = 0;  // 0: the figure's own sample count
  std::uint64_t seed = 1;
  double epsilon = 0.51;
  std::size_t threads = 0;
  std::size_t curve_points = 512;
};

struct FigureRegionCheck {
  std::string region;
  std::string subset;  // family tag the check applies to
  bool must_hold = true;
};

struct FigurePlan {
  int id = 0;
  std::size_t default_n = 0;
  std::vector<std::string> campaigns;  // scatter family tags or perturbation kinds
  std::vector<std::string> curves;
  std::vector<FigureRegionCheck> checks;
};

const FigurePlan& figure_plan(int fig_id);

struct FigureBundle {
  std::vector<std::filesystem::path> files;
  nlohmann::json meta;
};

/// Writes fig<k>_scatter.csv (when the figure has samples),
/// fig<k>_curve_<tag>.csv for each curve and fig<k>_meta.json.
FigureBundle figure_dataset(int fig_id, const FigureConfig& config);

void write_curve_csv(std::ostream& out, const std::string& tag, const std::vector<CurvePoint>& points);

}  // namespace permutangle
