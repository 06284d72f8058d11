// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and sizes are fixed; every draw is seeded.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orthoscalar/error.hpp"
#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/rigidity.hpp"
#include "orthoscalar/subspaces.hpp"
#include "orthoscalar/synthesis.hpp"
#include "support.hpp"

using namespace orthoscalar;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Every orthoscalar representation built during the run, for the balance check.
std::vector<Representation> produced;

void record(const Representation& rep) {
  if (rep.quiver().is_separated() && orthoscalar_check(rep).is_orthoscalar) produced.push_back(rep);
}

struct StarTarget {
  std::size_t n;
  DimensionVector dims;
  Character chi;
};

// Balanced targets for star quivers: chi_0 = 1 and chi_i = d_0 / sum(d_i).
StarTarget star_target(DimensionVector dims) {
  std::size_t leaves = 0;
  for (std::size_t i = 1; i < dims.size(); ++i) leaves += dims[i];
  Character chi{1.0};
  for (std::size_t i = 1; i < dims.size(); ++i) chi.push_back(static_cast<double>(dims[0]) / leaves);
  return {dims.size() - 1, dims, chi};
}

const std::vector<DimensionVector> kStarDims = {
    {2, 1, 1, 1},    {2, 1, 1, 1, 1},    {2, 1, 1, 1, 1, 1}, {3, 1, 1, 1, 1},    {3, 1, 1, 1, 1, 1},
    {4, 1, 1, 1, 1, 1}, {3, 2, 1, 1, 1, 1}, {6, 3, 3, 3, 3, 3}, {5, 2, 2, 2, 2, 2}, {4, 2, 2, 2},
    {4, 2, 2, 2, 2}, {3, 2, 2, 1, 1},    {5, 2, 2, 3, 3},
};

std::optional<Representation> synthesize_star(const StarTarget& t, std::uint64_t seed) {
  SynthesisOptions opts;
  opts.seed = seed;
  const SynthesisResult r = synthesize(star_quiver(t.n), t.dims, t.chi, opts);
  if (!r.converged) return std::nullopt;
  record(r.representation);
  return r.representation;
}

// ---------------------------------------------------------------------------

Verdict loop_counterexample() {
  const Remark6Report r = remark6_demo();
  record(r.rep);
  const Representation t = oracle::loop_t();
  Verdict v;
  v.pass = r.holds && r.gram_residual == 0.0 && r.plain_end_dimension == 2 && r.star_end_dimension == 1 &&
           r.span_residual <= 1e-12 && oracle::hom_dimension(t, t, false) == 2 &&
           oracle::hom_dimension(t, t, true) == 1;
  v.detail = "gram residual " + std::to_string(r.gram_residual) + ", plain End " +
             std::to_string(r.plain_end_dimension) + ", star End " + std::to_string(r.star_end_dimension);
  return v;
}

Verdict scalar_endomorphisms() {
  std::size_t tested = 0, indecomposable = 0, violations = 0, skipped = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const auto& dims : kStarDims) {
      const auto rep = synthesize_star(star_target(dims), seed);
      if (!rep) {
        ++skipped;
        continue;
      }
      ++tested;
      if (hom_space(*rep, *rep, Category::star).dimension() != 1) continue;
      ++indecomposable;
      if (hom_space(*rep, *rep, Category::plain).dimension() != 1) ++violations;
    }
  }
  Verdict v;
  v.pass = tested >= 50 && violations == 0;
  v.detail = std::to_string(tested) + " representations, " + std::to_string(indecomposable) +
             " star-indecomposable, " + std::to_string(violations) + " violations, " + std::to_string(skipped) +
             " non-converged";
  return v;
}

Verdict rescaling_rigidity() {
  Rng rng(2024);
  std::size_t certified = 0;
  double worst_entry = 0.0, worst_scalar = 0.0;
  bool counts_match = true;
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<Eigen::Index>(1 + rng() % 8);
    const auto cols = static_cast<Eigen::Index>(1 + rng() % 8);
    const RescalingInstance inst = oracle::valid_instance(rows, cols, rng);
    try {
      const RigidityCertificate c = lemma1_certify(inst);
      worst_entry = std::max(worst_entry, c.max_entry_deviation);
      worst_scalar = std::max(worst_scalar, c.max_scalar_deviation);
      counts_match = counts_match && c.steps.size() == oracle::nonzero_count(inst.z) &&
                     c.steps.size() == c.nonzero_count;
      if (c.equal) ++certified;
    } catch (const Error&) {
    }
  }

  // Invalid instances with the precondition each one breaks.
  std::vector<std::pair<RescalingInstance, ErrorCode>> invalid;
  for (int k = 0; k < 10; ++k) {
    RescalingInstance inst = oracle::valid_instance(4, 4, rng);
    ErrorCode expected;
    if (k % 3 == 0) {
      inst.z.row(k % 4).setZero();
      inst.w = inst.z;
      expected = ErrorCode::precondition_zero_line;
    } else if (k % 3 == 1) {
      // rescale one entry of W: row and column lengths no longer agree
      Eigen::Index i = 0, j = 0;
      inst.z.cwiseAbs().maxCoeff(&i, &j);
      inst.w(i, j) *= 1.5;
      expected = ErrorCode::precondition_lengths;
    } else {
      // rotate the phase of one entry: lengths agree, the relation breaks
      Eigen::Index i = 0, j = 0;
      inst.z.cwiseAbs().maxCoeff(&i, &j);
      inst.w(i, j) *= Complex(0.0, 1.0);
      expected = ErrorCode::precondition_relation;
    }
    invalid.emplace_back(inst, expected);
  }
  std::size_t rejected = 0;
  for (const auto& [inst, expected] : invalid) {
    try {
      check_instance(inst);
    } catch (const Error& e) {
      if (e.code() == expected) ++rejected;
    }
  }
  Verdict v;
  v.pass = certified == 100 && worst_entry <= 1e-10 && worst_scalar <= 1e-7 && counts_match && rejected == 10;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/100 certified, max|Z-W| %.1e, scalar dev %.1e, steps=K %s, %zu/10 rejected",
                certified, worst_entry, worst_scalar, counts_match ? "yes" : "no", rejected);
  v.detail = buf;
  return v;
}

// Star-quiver representation whose leaf maps are random scaled isometries.
// Direct sums stay in K only when the leaf scales agree, so scales can be fixed.
Representation random_in_k(std::size_t n, Eigen::Index centre, Rng& rng,
                           const std::vector<double>& scales = {}) {
  DimensionVector dims{static_cast<std::size_t>(centre)};
  std::vector<Matrix> blocks;
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = static_cast<Eigen::Index>(1 + rng() % static_cast<std::uint64_t>(centre));
    dims.push_back(static_cast<std::size_t>(d));
    const double c = scales.empty() ? scale(rng) : scales[i];
    blocks.push_back(c * random_unitary(centre, rng).leftCols(d));
  }
  return Representation(star_quiver(n), dims, blocks);
}

std::vector<double> leaf_scales(const Representation& t) {
  std::vector<double> out;
  for (const Matrix& b : t.blocks()) out.push_back(b.col(0).norm());
  return out;
}

Verdict subspace_equivalence() {
  Rng rng(77);
  std::size_t matched = 0;
  double worst_witness = 0.0;
  std::size_t witnessed = 0;
  std::string mismatch;
  for (int pair = 0; pair < 20; ++pair) {
    const std::size_t n = 2 + static_cast<std::size_t>(pair % 4);
    const Representation t = random_in_k(n, 2 + pair % 2, rng);
    Representation u;
    switch (pair % 4) {
      case 0:
        u = random_in_k(n, 2 + pair % 2, rng);
        break;
      case 1:
        u = direct_sum(t, random_in_k(n, 1, rng, leaf_scales(t)));
        break;
      case 2:
        u = conjugate(t, random_vertex_unitaries(t.dims(), rng));
        break;
      default:
        u = direct_sum(t, t);
        break;
    }
    const ProjectionSystem ft = functor_F(t);
    const ProjectionSystem fu = functor_F(u);
    const std::size_t quiver_dim = hom_space(t, u, Category::plain).dimension();
    const std::size_t subspace_dim = hom_space_P(ft, fu).dimension();
    const bool oracles_agree = oracle::hom_dimension(t, u, false) == quiver_dim &&
                               oracle::projection_hom_dimension(ft, fu) == subspace_dim;
    if (quiver_dim == subspace_dim && oracles_agree) {
      ++matched;
    } else if (mismatch.empty()) {
      mismatch = ", pair " + std::to_string(pair) + ": " + std::to_string(quiver_dim) + " vs " +
                 std::to_string(subspace_dim);
    }
    const EquivalenceResult e = are_equivalent_star(t, functor_G(ft), static_cast<std::uint64_t>(pair));
    if (e.status == EquivalenceStatus::equivalent) {
      ++witnessed;
      worst_witness = std::max(worst_witness, e.witness_residual);
    }
  }
  Verdict v;
  v.pass = matched == 20 && witnessed == 20 && worst_witness <= 1e-8;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/20 Hom dimensions match, %zu/20 round trips witnessed, worst residual %.1e",
                matched, witnessed, worst_witness);
  v.detail = buf + mismatch;
  return v;
}

Verdict subspace_schur() {
  struct Config {
    std::size_t n, ambient;
    std::vector<std::size_t> leaves;
  };
  const std::vector<Config> configs = {
      {3, 2, {1, 1, 1}}, {4, 2, {1, 1, 1, 1}}, {4, 3, {1, 1, 1, 1}}, {5, 3, {1, 1, 1, 1, 1}},
      {5, 4, {1, 1, 1, 1, 1}}, {4, 4, {2, 2, 2, 2}},
  };
  std::size_t systems = 0, indecomposable = 0, violations = 0, skipped = 0;
  for (std::uint64_t seed = 0; systems < 30 && seed < 20; ++seed) {
    for (const Config& c : configs) {
      if (systems == 30) break;
      const auto r = synthesize_projection_system(c.n, c.ambient, c.leaves, seed);
      if (!r.system) {
        ++skipped;
        continue;
      }
      record(r.synthesis.representation);
      bool positive = true;
      for (double w : *r.system->weights) positive = positive && w > 0.0;
      if (!positive) continue;
      ++systems;
      const Theorem2Report t = theorem2_verify(*r.system);
      if (t.indecomposable) ++indecomposable;
      if (!t.holds) ++violations;
    }
  }
  Verdict v;
  v.pass = systems == 30 && violations == 0;
  v.detail = std::to_string(systems) + " systems, " + std::to_string(indecomposable) + " indecomposable, " +
             std::to_string(violations) + " violations, " + std::to_string(skipped) + " non-converged";
  return v;
}

Verdict decomposition_round_trip() {
  // star-indecomposable summand targets
  const std::vector<DimensionVector> schur = {{2, 1, 1, 1}, {2, 1, 1, 1, 1}, {3, 1, 1, 1, 1}, {3, 2, 1, 1, 1, 1}};
  Rng rng(31);
  std::size_t exact = 0, degenerate = 0, witnessed = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t n = schur[static_cast<std::size_t>(trial) % schur.size()].size() - 1;
    std::vector<Representation> parts;
    for (std::size_t s = 0; s < k; ++s) {
      // all summands must share the quiver; pick targets with the same leaf count
      std::vector<DimensionVector> same;
      for (const auto& d : schur) {
        if (d.size() == n + 1) same.push_back(d);
      }
      const auto rep = synthesize_star(star_target(same[rng() % same.size()]), rng());
      if (rep) parts.push_back(*rep);
    }
    if (parts.size() != k) {
      ++degenerate;
      continue;
    }
    const Representation sum = direct_sum(parts);
    const Representation mixed = conjugate(sum, random_vertex_unitaries(sum.dims(), rng));
    record(mixed);
    try {
      const DecompositionResult d = decompose(mixed, static_cast<std::uint64_t>(trial));
      if (d.summands.size() == k) ++exact;
      for (const Representation& s : d.summands) record(s);
      const EquivalenceResult e = are_equivalent_star(mixed, direct_sum(d.summands), static_cast<std::uint64_t>(trial));
      if (e.status == EquivalenceStatus::equivalent) {
        ++witnessed;
        worst = std::max({worst, e.witness_residual, d.reassembly_residual});
      }
    } catch (const Error&) {
      ++degenerate;
    }
  }
  Verdict v;
  v.pass = exact == 20 && witnessed == 20 && worst <= 1e-8 && degenerate == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/20 exact summand counts, %zu/20 reassembled, worst residual %.1e, %zu degenerate",
                exact, witnessed, worst, degenerate);
  v.detail = buf;
  return v;
}

Verdict synthesis_convergence() {
  struct Target {
    const char* name;
    Quiver quiver;
    DimensionVector dims;
    Character chi;
  };
  const std::vector<Target> targets = {
      {"A2", a2_quiver(), {1, 1}, {1.0, 1.0}},
      {"star(3)", star_quiver(3), {2, 1, 1, 1}, {1.0, 2.0 / 3, 2.0 / 3, 2.0 / 3}},
      {"star(4)", star_quiver(4), {2, 1, 1, 1, 1}, {1.0, 0.5, 0.5, 0.5, 0.5}},
  };
  Verdict v;
  for (const Target& t : targets) {
    std::size_t converged = 0;
    std::vector<std::string> misses;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SynthesisOptions opts;
      opts.seed = seed;
      const SynthesisResult r = synthesize(t.quiver, t.dims, t.chi, opts);
      if (r.converged && r.residual <= 1e-9 && r.iterations <= 10000) {
        ++converged;
        record(r.representation);
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "seed %llu residual %.1e", static_cast<unsigned long long>(seed), r.residual);
        misses.push_back(buf);
      }
    }
    v.pass = v.pass && converged >= 19;
    v.detail += std::string(v.detail.empty() ? "" : ", ") + t.name + " " + std::to_string(converged) + "/20";
    for (const auto& m : misses) v.detail += " [non-converged " + m + "]";
  }
  return v;
}

Verdict balance_identity() {
  std::size_t violations = 0;
  double worst = 0.0;
  for (const Representation& rep : produced) {
    const OrthoscalarReport r = orthoscalar_check(rep);
    const auto [gap, odd] = balance_sums(rep.quiver(), rep.dims(), r.character);
    const double relative = gap / (1.0 + odd);
    worst = std::max(worst, relative);
    if (gap > 1e-9 * (1.0 + odd)) ++violations;
  }
  Verdict v;
  v.pass = !produced.empty() && violations == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu representations, worst relative gap %.1e, %zu violations", produced.size(), worst,
                violations);
  v.detail = buf;
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
  };
  // Balance runs last so it sees every representation the others produced.
  const std::vector<Criterion> criteria = {
      {1, "loop counterexample", 1.0, loop_counterexample},
      {2, "scalar endomorphisms of orthoscalar star representations", 60.0, scalar_endomorphisms},
      {3, "rescaling rigidity certificates", 10.0, rescaling_rigidity},
      {4, "star quivers and subspace systems", 30.0, subspace_equivalence},
      {5, "indecomposable projection systems are Schur", 30.0, subspace_schur},
      {7, "decomposition round trip", 0.0, decomposition_round_trip},
      {8, "synthesis convergence", 0.0, synthesis_convergence},
      {6, "balance identity", 0.0, balance_identity},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("unexpected error: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds <= 0.0 || seconds < c.limit_seconds;
    const bool pass = v.pass && in_time;
    all = all && pass;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %d (%s): ", pass ? "PASS" : "FAIL", c.id, c.name);
    char tail[96];
    if (c.limit_seconds > 0.0) {
      std::snprintf(tail, sizeof tail, " [%.2f s, limit %.0f s]", seconds, c.limit_seconds);
    } else {
      std::snprintf(tail, sizeof tail, " [%.2f s]", seconds);
    }
    lines.emplace_back(c.id, head + v.detail + tail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::puts(line.c_str());
  return all ? 0 : 1;
}
