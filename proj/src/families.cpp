#include "permutangle/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "permutangle/error.hpp"
#include "permutangle/measures.hpp"

namespace permutangle {
namespace {

constexpr double kSlack = 1e-12;   // per-parameter range slack
constexpr double kSumSlack = 1e-10;  // normalisation constraints

// Parameter access with name checking against the family's vocabulary.
class Params {
 public:
  Params(const FamilySpec& spec, std::vector<std::string> required, std::vector<std::string> optional = {})
      : spec_(spec) {
    std::set<std::string> known(required.begin(), required.end());
    known.insert(optional.begin(), optional.end());
    for (const auto& [name, value] : spec.params) {
      if (!known.count(name)) throw DomainError(spec.family + ": unknown parameter '" + name + "'");
      if (!std::isfinite(value)) throw DomainError(spec.family + ": parameter '" + name + "' is not finite");
    }
    for (const auto& name : required)
      if (!spec.params.count(name)) throw DomainError(spec.family + ": missing parameter '" + name + "'");
  }

  double get(const std::string& name) const { return spec_.params.at(name); }
  double get(const std::string& name, double fallback) const {
    auto it = spec_.params.find(name);
    return it == spec_.params.end() ? fallback : it->second;
  }
  bool has(const std::string& name) const { return spec_.params.count(name) != 0; }

  double in_range(const std::string& name, double lo, double hi) const { return in_range(name, get(name), lo, hi); }
  double in_range(const std::string& name, double v, double lo, double hi) const {
    if (v < lo - kSlack || v > hi + kSlack) {
      std::ostringstream os;
      os << spec_.family << ": " << name << " = " << v << " outside [" << lo << ", " << hi << "]";
      throw DomainError(os.str());
    }
    return std::clamp(v, lo, hi);
  }

  void fail(const std::string& what) const { throw DomainError(spec_.family + ": " + what); }

 private:
  const FamilySpec& spec_;
};

ComplexMatrix projector(const PureState& v) { return outer(v.amplitudes(), v.amplitudes()); }

DensityMatrix two_qubit(ComplexMatrix m) { return DensityMatrix({2, 2}, std::move(m)); }

PureState three_qubit(std::vector<Complex> amps) { return PureState::normalized({2, 2, 2}, std::move(amps)); }

double bell_r12(double p2, double p3, double p4) {
  return std::pow(std::abs(8.0 * (p2 + p3 - 0.5) * (p2 + p4 - 0.5) * (p3 + p4 - 0.5)), 0.25);
}

double mems1_negativity(double c) { return std::sqrt((1.0 - c) * (1.0 - c) + c * c) - (1.0 - c); }

// ---- parameter decoding shared by make_state and closed_form_measures ----

struct Bell {
  double p[4];
};
Bell bell_params(const FamilySpec& s) {
  Params a(s, {"p1", "p2", "p3", "p4"});
  Bell b{};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const std::string n = "p" + std::to_string(i + 1);
    b.p[i] = a.in_range(n, 0.0, 1.0);
    sum += b.p[i];
  }
  if (std::abs(sum - 1.0) > kSumSlack) a.fail("weights must sum to 1");
  return b;
}

struct Werner {
  double p;
  int fiducial;
};
Werner werner_params(const FamilySpec& s) {
  Params a(s, {"p"}, {"fiducial"});
  const double f = a.get("fiducial", 0.0);
  if (f != 0.0 && f != 1.0) a.fail("fiducial must be 0 (phi+) or 1 (psi-)");
  return {a.in_range("p", 0.0, 1.0), static_cast<int>(f)};
}

double single_param(const FamilySpec& s, const std::string& name, double lo, double hi) {
  Params a(s, {name});
  return a.in_range(name, lo, hi);
}

struct XParams {
  double a, b, c, d;
  Complex w, z;
};
XParams x_params(const FamilySpec& s) {
  Params p(s, {"a", "b", "c", "d"}, {"w_re", "w_im", "z_re", "z_im"});
  XParams x{p.in_range("a", 0.0, 1.0), p.in_range("b", 0.0, 1.0), p.in_range("c", 0.0, 1.0), p.in_range("d", 0.0, 1.0),
            {p.get("w_re", 0.0), p.get("w_im", 0.0)}, {p.get("z_re", 0.0), p.get("z_im", 0.0)}};
  if (std::abs(x.a + x.b + x.c + x.d - 1.0) > kSumSlack) p.fail("a + b + c + d must equal 1");
  if (std::abs(x.w) > std::sqrt(x.a * x.d) + kSlack) p.fail("|w| exceeds sqrt(a d)");
  if (std::abs(x.z) > std::sqrt(x.b * x.c) + kSlack) p.fail("|z| exceeds sqrt(b c)");
  return x;
}

CanonicalParams canonical_params(const FamilySpec& s, int count) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back("l" + std::to_string(i));
  Params a(s, names, {"theta"});
  CanonicalParams c;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    c.lambda[i] = i < count ? a.in_range(names[i], 0.0, 1.0) : 0.0;
    sum += c.lambda[i] * c.lambda[i];
  }
  if (std::abs(sum - 1.0) > kSumSlack) a.fail("squared amplitudes must sum to 1");
  c.theta = a.in_range("theta", a.get("theta", 0.0), 0.0, std::numbers::pi);
  return c;
}

struct M3tsGeneral {
  double c12, c13;
};
M3tsGeneral m3ts_general_params(const FamilySpec& s) {
  Params a(s, {"c12", "c13"});
  M3tsGeneral g{a.in_range("c12", 0.0, 1.0), a.in_range("c13", 0.0, 1.0)};
  if (g.c12 * g.c12 + g.c13 * g.c13 > 1.0 + kSumSlack) a.fail("c12^2 + c13^2 must not exceed 1");
  return g;
}

struct Ansatz2 {
  double alpha, beta, gamma;
  bool optimised;
};
Ansatz2 ansatz2_params(const FamilySpec& s) {
  Params a(s, {"alpha"}, {"beta"});
  if (a.has("beta")) {
    const double alpha = a.in_range("alpha", 0.0, 1.0);
    const double beta = a.in_range("beta", 0.0, 1.0);
    const double gamma = a.in_range("gamma (= 1 - alpha - beta)", 1.0 - alpha - beta, 0.0, 1.0);
    return {alpha, beta, gamma, false};
  }
  const double alpha = a.in_range("alpha", 0.0, 1.0 / 3.0);
  const double root = std::sqrt(std::max(0.0, (1.0 - alpha) * (1.0 - 3.0 * alpha)));
  return {alpha, 0.5 * (1.0 - alpha + root), 0.5 * (1.0 - alpha - root), true};
}

struct Cq {
  double p;
  double r0[3], r1[3];
};
Cq cq_params(const FamilySpec& s) {
  Params a(s, {"p", "x0", "y0", "z0", "x1", "y1", "z1"});
  Cq c{a.in_range("p", 0.0, 1.0), {a.get("x0"), a.get("y0"), a.get("z0")}, {a.get("x1"), a.get("y1"), a.get("z1")}};
  for (const double* r : {c.r0, c.r1})
    if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] > 1.0 + kSumSlack) a.fail("Bloch vector longer than 1");
  return c;
}

ComplexMatrix qubit_from_bloch(const double r[3]) {
  return ComplexMatrix{{0.5 * (1.0 + r[2]), Complex(0.5 * r[0], -0.5 * r[1])},
                       {Complex(0.5 * r[0], 0.5 * r[1]), 0.5 * (1.0 - r[2])}};
}

// ---- constructors ----

State make_bell_diagonal(const FamilySpec& s) {
  const Bell b = bell_params(s);
  ComplexMatrix m = b.p[0] * projector(bell::phi_plus()) + b.p[1] * projector(bell::psi_plus()) +
                    b.p[2] * projector(bell::psi_minus()) + b.p[3] * projector(bell::phi_minus());
  return two_qubit(std::move(m));
}

State make_werner(const FamilySpec& s) {
  const Werner w = werner_params(s);
  const PureState f = w.fiducial == 0 ? bell::phi_plus() : bell::psi_minus();
  ComplexMatrix m = ((1.0 - w.p) / 4.0) * ComplexMatrix::identity(4) + w.p * projector(f);
  return two_qubit(std::move(m));
}

State make_mems1(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 1.0);
  return two_qubit(ComplexMatrix{{c / 2, 0, 0, c / 2}, {0, 1 - c, 0, 0}, {0, 0, 0, 0}, {c / 2, 0, 0, c / 2}});
}

State make_mems2(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 2.0 / 3.0);
  const double t = 1.0 / 3.0;
  return two_qubit(ComplexMatrix{{t, 0, 0, c / 2}, {0, t, 0, 0}, {0, 0, 0, 0}, {c / 2, 0, 0, t}});
}

State make_x_state(const FamilySpec& s) {
  const XParams x = x_params(s);
  return two_qubit(ComplexMatrix{{x.a, 0, 0, x.w},
                                 {0, x.b, x.z, 0},
                                 {0, std::conj(x.z), x.c, 0},
                                 {std::conj(x.w), 0, 0, x.d}});
}

State make_m3ts(const FamilySpec& s) {
  const double c = single_param(s, "c12", 0.0, 1.0);
  const double h = 1.0 / std::numbers::sqrt2;
  return three_qubit({h, 0, 0, 0, 0, 0, h * c, h * std::sqrt(std::max(0.0, 1.0 - c * c))});
}

State make_m3ts_general(const FamilySpec& s) {
  const auto g = m3ts_general_params(s);
  const double h = 1.0 / std::numbers::sqrt2;
  const double rest = std::sqrt(std::max(0.0, 1.0 - g.c12 * g.c12 - g.c13 * g.c13));
  return three_qubit({h, 0, 0, 0, 0, h * g.c13, h * g.c12, h * rest});
}

State make_ansatz1(const FamilySpec& s) {
  const double p = single_param(s, "p", 0.0, 1.0);
  ComplexMatrix m = ((1.0 - p) / 2.0) * (projector(bell::psi_plus()) + projector(bell::psi_minus())) +
                    p * projector(bell::phi_plus());
  return two_qubit(std::move(m));
}

State make_ansatz2(const FamilySpec& s) {
  const Ansatz2 a = ansatz2_params(s);
  ComplexMatrix m(4, 4);
  m(1, 1) = a.alpha;  // |01><01|
  m += a.beta * projector(bell::phi_plus());
  m += a.gamma * projector(bell::phi_minus());
  return two_qubit(std::move(m));
}

State make_mems1_purification(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 1.0);
  const double e = std::sqrt(c / 2.0);
  return three_qubit({e, 0, 0, 0, 0, std::sqrt(1.0 - c), e, 0});
}

State make_cq_state(const FamilySpec& s) {
  const Cq c = cq_params(s);
  ComplexMatrix zero = ComplexMatrix::diagonal({1.0, 0.0});
  ComplexMatrix one = ComplexMatrix::diagonal({0.0, 1.0});
  ComplexMatrix m = c.p * kron(zero, qubit_from_bloch(c.r0)) + (1.0 - c.p) * kron(one, qubit_from_bloch(c.r1));
  return two_qubit(std::move(m));
}

State make_canonical(const FamilySpec& s, int count) { return canonical_state(canonical_params(s, count)); }

// ---- closed forms ----

MeasureMap closed_bell_diagonal(const FamilySpec& s) {
  const Bell b = bell_params(s);
  const double pmax = *std::max_element(b.p, b.p + 4);
  const double c = std::max(0.0, 2.0 * pmax - 1.0);
  double sq = 0.0;
  for (double p : b.p) sq += p * p;
  return {{"c12", c}, {"n12", c}, {"r12", bell_r12(b.p[1], b.p[2], b.p[3])}, {"s_lin", 4.0 / 3.0 * (1.0 - sq)}};
}

MeasureMap closed_werner(const FamilySpec& s) {
  const double p = werner_params(s).p;
  const double c = std::max(0.0, (3.0 * p - 1.0) / 2.0);
  return {{"c12", c}, {"n12", c}, {"r12", std::pow(p, 0.75)}, {"s_lin", 1.0 - p * p}};
}

MeasureMap closed_mems1(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 1.0);
  const double tr2 = (1.0 - c) * (1.0 - c) + c * c;
  return {{"c12", c}, {"n12", mems1_negativity(c)}, {"r12", c}, {"s_lin", 4.0 / 3.0 * (1.0 - tr2)}};
}

MeasureMap closed_mems2(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 2.0 / 3.0);
  const double tr2 = 1.0 / 3.0 + c * c / 2.0;
  return {{"c12", c},
          {"n12", std::sqrt(1.0 / 9.0 + c * c) - 1.0 / 3.0},
          {"r12", std::sqrt(2.0 * c / 3.0)},
          {"s_lin", 4.0 / 3.0 * (1.0 - tr2)}};
}

MeasureMap closed_x_state(const FamilySpec& s) {
  const XParams x = x_params(s);
  const double aw = std::abs(x.w), az = std::abs(x.z);
  const double c = 2.0 * std::max({0.0, az - std::sqrt(x.a * x.d), aw - std::sqrt(x.b * x.c)});
  const double r = 2.0 * std::pow(std::abs(x.a * x.d - x.b * x.c), 0.25) * std::pow(std::abs(az * az - aw * aw), 0.25);
  // The partial transpose is again an X matrix with blocks [[a, z], [z*, d]] and [[b, w], [w*, c]].
  const double mu1 = 0.5 * (x.a + x.d) - std::sqrt(0.25 * (x.a - x.d) * (x.a - x.d) + az * az);
  const double mu2 = 0.5 * (x.b + x.c) - std::sqrt(0.25 * (x.b - x.c) * (x.b - x.c) + aw * aw);
  const double n = std::max(0.0, -2.0 * std::min(mu1, mu2));
  const double tr2 = x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d + 2.0 * (aw * aw + az * az);
  return {{"c12", c}, {"n12", n}, {"r12", r}, {"s_lin", 4.0 / 3.0 * (1.0 - tr2)}};
}

MeasureMap closed_w_class(const FamilySpec& s) {
  const CanonicalParams c = canonical_params(s, 4);
  const double* l = c.lambda;
  const double c12 = 2 * l[0] * l[3], c13 = 2 * l[0] * l[2], c23 = 2 * l[2] * l[3];
  return {{"c12", c12}, {"r12", c12}, {"c13", c13}, {"r13", c13}, {"c23", c23}, {"r23", c23}, {"tau", 0.0}};
}

MeasureMap closed_canonical(const FamilySpec& s) {
  const CanonicalParams c = canonical_params(s, 5);
  const double* l = c.lambda;
  return {{"c12", 2 * l[0] * l[3]},
          {"r12", 2 * l[0] * std::sqrt(l[3]) * std::pow(l[3] * l[3] + l[4] * l[4], 0.25)},
          {"tau", 4 * l[0] * l[0] * l[4] * l[4]}};
}

MeasureMap closed_m3ts(const FamilySpec& s) {
  const double c = single_param(s, "c12", 0.0, 1.0);
  return {{"c12", c},   {"n12", c},   {"r12", std::sqrt(c)}, {"tau", 1.0 - c * c},
          {"c13", 0.0}, {"c23", 0.0}, {"r13", 0.0},          {"r23", 0.0}};
}

MeasureMap closed_m3ts_general(const FamilySpec& s) {
  const auto g = m3ts_general_params(s);
  const double r12 = std::sqrt(g.c12) * std::pow(1.0 - g.c13 * g.c13, 0.25);
  const double r13 = std::sqrt(g.c13) * std::pow(1.0 - g.c12 * g.c12, 0.25);
  return {{"c12", g.c12},
          {"c13", g.c13},
          {"c23", g.c12 * g.c13},
          {"r12", r12},
          {"r13", r13},
          {"r23", r12 * r13},
          {"tau", 1.0 - g.c12 * g.c12 - g.c13 * g.c13}};
}

MeasureMap closed_ansatz1(const FamilySpec& s) {
  const double p = single_param(s, "p", 0.0, 1.0);
  const double c = std::max(0.0, 2.0 * p - 1.0);
  const double tr2 = p * p + (1.0 - p) * (1.0 - p) / 2.0;
  return {{"c12", c},
          {"n12", c},
          {"r12", std::sqrt(p) * std::pow(std::abs(2.0 * p - 1.0), 0.25)},
          {"s_lin", 4.0 / 3.0 * (1.0 - tr2)}};
}

MeasureMap closed_ansatz2(const FamilySpec& s) {
  const Ansatz2 a = ansatz2_params(s);
  if (a.optimised) {
    return {{"n12", 1.0 - 3.0 * a.alpha},
            {"r12", std::pow(1.0 - a.alpha, 0.75) * std::pow(1.0 - 3.0 * a.alpha, 0.25)}};
  }
  return {{"n12", std::sqrt(a.alpha * a.alpha + (a.beta - a.gamma) * (a.beta - a.gamma)) - a.alpha},
          {"r12", std::sqrt(std::abs(a.beta * a.beta - a.gamma * a.gamma))}};
}

MeasureMap closed_mems1_purification(const FamilySpec& s) {
  const double c = single_param(s, "c", 0.0, 1.0);
  const double side = std::sqrt(2.0 * c * (1.0 - c));
  return {{"c12", c},    {"n12", mems1_negativity(c)}, {"r12", c},    {"tau", 0.0},
          {"c13", side}, {"c23", side},                {"r13", side}, {"r23", side}};
}

MeasureMap closed_cq_state(const FamilySpec& s) {
  cq_params(s);
  return {{"c12", 0.0}, {"n12", 0.0}, {"r12", 0.0}};
}

struct FamilyEntry {
  std::string tag;
  std::function<State(const FamilySpec&)> make;
  std::function<MeasureMap(const FamilySpec&)> closed;
};

const std::vector<FamilyEntry>& registry() {
  static const std::vector<FamilyEntry> entries = {
      {"bell_diagonal", make_bell_diagonal, closed_bell_diagonal},
      {"werner", make_werner, closed_werner},
      {"mems1", make_mems1, closed_mems1},
      {"mems2", make_mems2, closed_mems2},
      {"x_state", make_x_state, closed_x_state},
      {"w_class", [](const FamilySpec& s) { return make_canonical(s, 4); }, closed_w_class},
      {"canonical3", [](const FamilySpec& s) { return make_canonical(s, 5); }, closed_canonical},
      {"m3ts", make_m3ts, closed_m3ts},
      {"m3ts_general", make_m3ts_general, closed_m3ts_general},
      {"ansatz1", make_ansatz1, closed_ansatz1},
      {"ansatz2", make_ansatz2, closed_ansatz2},
      {"mems1_purification", make_mems1_purification, closed_mems1_purification},
      {"cq_state", make_cq_state, closed_cq_state},
  };
  return entries;
}

const FamilyEntry& lookup(const std::string& tag) {
  for (const auto& e : registry())
    if (e.tag == tag) return e;
  throw DomainError("unknown family '" + tag + "'");
}

// ---- random draws ----

std::vector<double> simplex(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log1p(-rng.uniform());  // Exp(1), finite since uniform() < 1
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

std::vector<double> unit_amplitudes(Rng& rng, std::size_t n) {
  std::vector<double> l(n);
  double sum = 0.0;
  for (auto& x : l) {
    x = std::abs(rng.normal());
    sum += x * x;
  }
  for (auto& x : l) x /= std::sqrt(sum);
  return l;
}

void bloch_in_ball(Rng& rng, FamilySpec& s, const std::string& suffix) {
  double r[3];
  do {
    for (auto& x : r) x = rng.uniform(-1.0, 1.0);
  } while (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] > 1.0);
  s.params["x" + suffix] = r[0];
  s.params["y" + suffix] = r[1];
  s.params["z" + suffix] = r[2];
}

}  // namespace

const std::vector<std::string>& family_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& e : registry()) t.push_back(e.tag);
    return t;
  }();
  return tags;
}

State make_state(const FamilySpec& spec) { return lookup(spec.family).make(spec); }

MeasureMap closed_form_measures(const FamilySpec& spec) { return lookup(spec.family).closed(spec); }

PureState canonical_state(const CanonicalParams& p) {
  const double* l = p.lambda;
  return three_qubit({l[0], 0, 0, 0, l[1] * std::polar(1.0, p.theta), l[2], l[3], l[4]});
}

MeasureMap numeric_measures(const State& state) {
  MeasureMap out;
  auto two_qubit_measures = [&out](const DensityMatrix& rho) {
    out["c12"] = concurrence(rho);
    out["n12"] = negativity(rho);
    out["r12"] = r12(rho);
    out["s_lin"] = linear_entropy(rho);
  };
  if (const auto* rho = std::get_if<DensityMatrix>(&state)) {
    two_qubit_measures(*rho);
    return out;
  }
  const auto& psi = std::get<PureState>(state);
  if (psi.dims() == Dims{2, 2}) {
    two_qubit_measures(DensityMatrix::from_pure(psi));
    return out;
  }
  if (psi.dims() != Dims{2, 2, 2}) throw DimensionError("numeric_measures: two-qubit or three-qubit state expected");
  const DensityMatrix r12_state = reduce(psi, {0, 1});
  out["c12"] = concurrence(r12_state);
  out["n12"] = negativity(r12_state);
  out["r12"] = r12(r12_state);
  out["tau"] = three_tangle(psi);
  const DensityMatrix r13_state = reduce(psi, {0, 2});
  const DensityMatrix r23_state = reduce(psi, {1, 2});
  out["c13"] = concurrence(r13_state);
  out["r13"] = r12(r13_state);
  out["c23"] = concurrence(r23_state);
  out["r23"] = r12(r23_state);
  return out;
}

FamilySpec random_spec(const std::string& family, Rng& rng) {
  lookup(family);
  FamilySpec s{family, {}};
  auto& p = s.params;
  if (family == "bell_diagonal") {
    const auto w = simplex(rng, 4);
    for (int i = 0; i < 4; ++i) p["p" + std::to_string(i + 1)] = w[i];
  } else if (family == "werner") {
    p["p"] = rng.uniform();
    p["fiducial"] = static_cast<double>(rng.next_u64() & 1U);
  } else if (family == "mems1" || family == "mems1_purification") {
    p["c"] = rng.uniform();
  } else if (family == "mems2") {
    p["c"] = rng.uniform(0.0, 2.0 / 3.0);
  } else if (family == "x_state") {
    const auto w = simplex(rng, 4);
    p["a"] = w[0];
    p["b"] = w[1];
    p["c"] = w[2];
    p["d"] = w[3];
    const Complex wz = std::polar(std::sqrt(w[0] * w[3]) * rng.uniform(), rng.uniform(0.0, 2.0 * std::numbers::pi));
    const Complex zz = std::polar(std::sqrt(w[1] * w[2]) * rng.uniform(), rng.uniform(0.0, 2.0 * std::numbers::pi));
    p["w_re"] = wz.real();
    p["w_im"] = wz.imag();
    p["z_re"] = zz.real();
    p["z_im"] = zz.imag();
  } else if (family == "w_class" || family == "canonical3") {
    const std::size_t n = family == "w_class" ? 4 : 5;
    const auto l = unit_amplitudes(rng, n);
    for (std::size_t i = 0; i < n; ++i) p["l" + std::to_string(i)] = l[i];
    p["theta"] = rng.uniform(0.0, std::numbers::pi);
  } else if (family == "m3ts") {
    p["c12"] = rng.uniform();
  } else if (family == "m3ts_general") {
    // Uniform on the quarter disc c12^2 + c13^2 <= 1.
    const double r = std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, 0.5 * std::numbers::pi);
    p["c12"] = r * std::cos(phi);
    p["c13"] = r * std::sin(phi);
  } else if (family == "ansatz1") {
    p["p"] = rng.uniform();
  } else if (family == "ansatz2") {
    if (rng.next_u64() & 1U) {
      p["alpha"] = rng.uniform(0.0, 1.0 / 3.0);
    } else {
      const auto w = simplex(rng, 3);
      p["alpha"] = w[0];
      p["beta"] = w[1];
    }
  } else if (family == "cq_state") {
    p["p"] = rng.uniform();
    bloch_in_ball(rng, s, "0");
    bloch_in_ball(rng, s, "1");
  }
  return s;
}

// ---- boundary curves ----

namespace {

double werner_lower(double r) { return std::max(0.0, (3.0 * std::pow(r, 4.0 / 3.0) - 1.0) / 2.0); }

using CurveFn = std::function<CurvePoint(double)>;

struct CurveEntry {
  CurveInfo info;
  CurveFn eval;
};

const std::vector<CurveEntry>& curves() {
  static const std::vector<CurveEntry> entries = [] {
    const double b = separable_r12_bound();
    std::vector<CurveEntry> e;
    e.push_back({{"cr_rank2_upper", "r12", "c12", "r12", 0, 1, 0, 1}, [](double r) { return CurvePoint{r, r}; }});
    e.push_back({{"cr_rank2_lower", "r12", "c12", "r12", 0, 1, 0, 1}, [](double r) { return CurvePoint{r, r * r}; }});
    e.push_back({{"cr_rank3", "r12", "c12", "c12", 0, 1, 0, 1},
                 [](double c) { return CurvePoint{std::pow(c, 0.25) * std::sqrt((1.0 + c) / 2.0), c}; }});
    e.push_back({{"cr_rank3_segment", "r12", "c12", "r12", 0, b, 0, b}, [](double r) { return CurvePoint{r, 0.0}; }});
    e.push_back({{"cr_rank4", "r12", "c12", "r12", 0, 1, b, 1},
                 [](double r) { return CurvePoint{r, werner_lower(r)}; }});
    e.push_back({{"nr_rank2_upper", "r12", "n12", "r12", 0, 1, 0, 1}, [](double r) { return CurvePoint{r, r}; }});
    e.push_back({{"nr_rank2_lower", "r12", "n12", "r12", 0, 1, 0, 1},
                 [](double r) { return CurvePoint{r, mems1_negativity(r)}; }});
    e.push_back({{"nr_rank3", "r12", "n12", "n12", 0, 1, 0, 1},
                 [](double n) { return CurvePoint{std::pow(n, 0.25) * std::pow((2.0 + n) / 3.0, 0.75), n}; }});
    e.push_back({{"nr_rank3_segment", "r12", "n12", "r12", 0, b, 0, b}, [](double r) { return CurvePoint{r, 0.0}; }});
    e.push_back({{"nr_rank4", "r12", "n12", "r12", 0, 1, b, 1},
                 [](double r) { return CurvePoint{r, werner_lower(r)}; }});
    e.push_back({{"m3ts_tau", "c12", "tau", "c12", 0, 1, 0, 1}, [](double c) { return CurvePoint{c, 1.0 - c * c}; }});
    return e;
  }();
  return entries;
}

const CurveEntry& curve_entry(const std::string& tag) {
  for (const auto& c : curves())
    if (c.info.tag == tag) return c;
  throw DomainError("unknown curve '" + tag + "'");
}

}  // namespace

const std::vector<CurveInfo>& curve_catalog() {
  static const std::vector<CurveInfo> infos = [] {
    std::vector<CurveInfo> v;
    for (const auto& c : curves()) v.push_back(c.info);
    return v;
  }();
  return infos;
}

const CurveInfo& curve_info(const std::string& tag) { return curve_entry(tag).info; }

std::vector<double> default_grid(const std::string& tag, std::size_t points) {
  const CurveInfo& info = curve_info(tag);
  if (points == 0) throw DomainError("default_grid: need at least one point");
  if (points == 1) return {info.default_lo};
  std::vector<double> g(points);
  const double step = (info.default_hi - info.default_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = info.default_lo + step * static_cast<double>(i);
  g.back() = info.default_hi;
  return g;
}

std::vector<CurvePoint> boundary_curve(const std::string& tag, const std::vector<double>& grid) {
  const CurveEntry& c = curve_entry(tag);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double v : grid) {
    if (!std::isfinite(v) || v < c.info.domain_lo || v > c.info.domain_hi) {
      std::ostringstream os;
      os << tag << ": " << c.info.parameter << " = " << v << " outside [" << c.info.domain_lo << ", "
         << c.info.domain_hi << "]";
      throw DomainError(os.str());
    }
    out.push_back(c.eval(v));
  }
  return out;
}

}  // namespace permutangle
