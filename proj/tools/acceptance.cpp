#include "basic_hodge/cli_report.hpp"
#include "basic_hodge/errors.hpp"

#include <chrono>
#include <cstdlib>
#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace basic_hodge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

const Check* find(const DecompositionReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

/// Residual of the named check; +inf when missing.
double residual(const DecompositionReport& r, const std::string& prefix) {
  const Check* c = find(r, prefix);
  return c ? c->residual : std::numeric_limits<double>::infinity();
}

bool passed(const DecompositionReport& r, const std::string& prefix) {
  const Check* c = find(r, prefix);
  return c && c->verdict == Verdict::Pass;
}

bool certificates_ok(const DecompositionReport& r, double gap_min) {
  for (const auto& c : r.checks)
    if (c.name.find("gap certificate") != std::string::npos && (!c.certificate || *c.certificate < gap_min)) return false;
  for (double b : r.betti_certificate)
    if (b < gap_min) return false;
  return find(r, "certificate:") == nullptr;
}

std::string label(const DecompositionReport& r) { return r.structure + " N=" + std::to_string(r.grid); }

void print(int index, const Criterion& c, const std::string& summary) {
  std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << index << ": " << summary << c.detail.str() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  const int fleet_size = argc > 1 ? std::atoi(argv[1]) : 20;
  constexpr double amplitude = 0.3;
  constexpr int modes = 2;
  std::vector<bool> results;

  // 1. exact identity suite
  {
    Criterion c;
    report::RunConfig cfg;
    cfg.subcommand = "pointwise";
    const auto t0 = Clock::now();
    const report::Outcome out = report::cmd_pointwise(cfg);
    const double t = seconds_since(t0);
    c.require(out.exit_code == report::ExitCode::Pass, out.message);
    for (const char* id : {"Λ_Φ^+ = ℝω ⊕ Λ_g^-", "Λ_g^+ = ℝω ⊕ Λ_Φ^-", "Λ_Φ^+ ∩ Λ_g^+ = ℝω", "Λ_Φ^- ∩ Λ_g^- = 0",
                           "Λ_Φ^+ = (Λ_Φ^{1,1})_ℝ", "Λ²_{D,ℂ} = Λ_Φ^{2,0} ⊕ Λ_Φ^{1,1} ⊕ Λ_Φ^{0,2}"}) {
      bool found = false;
      for (const auto& e : out.report.at("identities"))
        if (e.at("identity") == id) found = e.at("pass").get<bool>();
      c.require(found, std::string("missing or failing: ") + id);
    }
    c.require(t < 1.0, "runtime " + std::to_string(t) + " s");
    print(1, c, std::to_string(out.report.at("total").get<int>()) + " exact identities, " + std::to_string(t) + " s");
    results.push_back(c.pass);
  }

  DecomposeOptions opt;
  opt.complex = true;

  // 2. flat model
  const auto t_flat = Clock::now();
  DecompositionReport flat;
  std::string flat_error;
  try {
    flat = decompose(make_flat_structure(8), opt);
  } catch (const std::exception& e) {
    flat_error = e.what();
  }
  const double flat_seconds = seconds_since(t_flat);
  {
    Criterion c;
    c.require(flat_error.empty(), flat_error);
    c.require(flat.betti == std::array<int, 3>{1, 4, 6}, "betti");
    c.require(flat.h_phi_plus == 4 && flat.h_phi_minus == 2, "h_phi");
    c.require(flat.h11 == 4 && flat.h20 == 1 && flat.h02 == 1, "bidegree");
    c.require(certificates_ok(flat, 100.0), "gap certificate below 100");
    c.require(flat_seconds < 120.0, "runtime");
    std::ostringstream s;
    s << "flat N=8 b=(" << flat.betti[0] << "," << flat.betti[1] << "," << flat.betti[2] << ") h+=" << flat.h_phi_plus
      << " h-=" << flat.h_phi_minus << " h11=" << flat.h11.value_or(-1) << " h20=" << flat.h20.value_or(-1)
      << " h02=" << flat.h02.value_or(-1) << ", " << flat_seconds << " s";
    print(2, c, s.str());
    results.push_back(c.pass);
  }

  // fleet
  std::vector<DecompositionReport> fleet;
  std::vector<double> fleet_seconds;
  Criterion fleet_errors;
  for (int seed = 1; seed <= fleet_size; ++seed) {
    const auto t0 = Clock::now();
    try {
      fleet.push_back(decompose(make_perturbed_structure(8, static_cast<std::uint64_t>(seed), amplitude, modes), opt));
    } catch (const std::exception& e) {
      fleet_errors.require(false, "seed " + std::to_string(seed) + ": " + e.what());
      fleet.emplace_back();
    }
    fleet_seconds.push_back(seconds_since(t0));
  }

  // 3. fullness, pureness, direct = representability
  {
    Criterion c;
    c.pass = fleet_errors.pass;
    c.detail << fleet_errors.detail.str();
    double slowest = 0.0, min_angle = 180.0;
    for (std::size_t i = 0; i < fleet.size(); ++i) {
      const auto& r = fleet[i];
      const std::string who = label(r);
      c.require(r.betti[2] == 6 && r.h_phi_plus + r.h_phi_minus == 6, who + " fullness");
      c.require(passed(r, "pureness"), who + " pureness");
      min_angle = std::min(min_angle, residual(r, "pureness"));
      c.require(r.h_phi_minus_direct == r.h_phi_minus && passed(r, "h_Φ^- direct kernel"), who + " direct vs representability");
      c.require(certificates_ok(r, 100.0), who + " certificate");
      c.require(fleet_seconds[i] < 300.0, who + " runtime");
      slowest = std::max(slowest, fleet_seconds[i]);
    }
    std::ostringstream s;
    s << fleet.size() << " perturbed structures (amplitude 0.3, N=8), h+ + h- = b2 = 6, min pureness angle " << min_angle
      << " deg, slowest " << slowest << " s";
    print(3, c, s.str());
    results.push_back(c.pass);
  }

  // 4. closed anti-invariant forms
  {
    Criterion c;
    double worst_flat = 0.0, worst_fleet = 0.0;
    int vectors = 0;
    const auto scan = [&](const DecompositionReport& r, double tol, double& worst) {
      for (const char* name : {"Z_Φ^- self-dual", "Z_Φ^- coclosed", "Z_Φ^- L²-orthogonal"}) {
        const double v = residual(r, name);
        worst = std::max(worst, v);
        c.require(v <= tol, label(r) + " " + name);
      }
      vectors += r.h_phi_minus_direct;
    };
    scan(flat, 1e-10, worst_flat);
    for (const auto& r : fleet) scan(r, 1e-7, worst_fleet);
    std::ostringstream s;
    s << vectors << " certified Z_Φ^- vectors, worst residual flat " << worst_flat << ", fleet " << worst_fleet;
    print(4, c, s.str());
    results.push_back(c.pass);
  }

  // 5. refined decomposition of random self-dual inputs
  {
    Criterion c;
    double worst_flat = 0.0, worst_fleet = 0.0;
    report::RunConfig cfg;
    cfg.subcommand = "lemma21";
    cfg.count = 20;
    const auto run = [&](double& worst) {
      const report::Outcome out = report::cmd_lemma21(cfg);
      c.require(out.exit_code == report::ExitCode::Pass, cfg.structure + " seed " + std::to_string(cfg.seed) + ": " + out.message);
      if (out.report.contains("checks"))
        for (const auto& check : out.report.at("checks")) worst = std::max(worst, check.at("residual").get<double>());
    };
    run(worst_flat);
    cfg.structure = "perturbed";
    cfg.amplitude = amplitude;
    cfg.modes = modes;
    for (int seed = 1; seed <= fleet_size; ++seed) {
      cfg.seed = static_cast<std::uint64_t>(seed);
      run(worst_fleet);
    }
    std::ostringstream s;
    s << "20 self-dual inputs per structure, worst residual flat " << worst_flat << " (tol 1e-8), fleet " << worst_fleet
      << " (tol 1e-7)";
    print(5, c, s.str());
    results.push_back(c.pass);
  }

  // 6. complex suite
  {
    Criterion c;
    for (const auto& r : fleet) c.require(r.h20 && r.h20 == r.h02 && passed(r, "conjugation symmetry"), label(r) + " conjugation");
    c.require(flat.h11 && *flat.h11 + *flat.h20 + *flat.h02 == 6 && passed(flat, "complex fullness"), "flat complex fullness");
    c.require(flat.h11 == flat.h_phi_plus && passed(flat, "h^{1,1} = h_Φ^+"), "flat h11 = h+");
    c.require(passed(flat, "h^{2,0} + h^{0,2} = h_Φ^-"), "flat h20 + h02 = h-");
    print(6, c, "h20 = h02 on every structure; flat 4 + 1 + 1 = 6, h11 = h+, h20 + h02 = h-");
    results.push_back(c.pass);
  }

  // 7. frame-based vs coordinate-based operators
  {
    Criterion c;
    double worst = 0.0;
    const auto scan = [&](const DecompositionReport& r) {
      for (const char* name : {"frame star = coordinate star", "frame Φ = coordinate Φ"}) {
        const double v = residual(r, name);
        worst = std::max(worst, v);
        c.require(v <= 1e-10, label(r) + " " + name);
      }
    };
    scan(flat);
    for (const auto& r : fleet) scan(r);
    std::ostringstream s;
    s << "100 node samples per structure, worst residual " << worst;
    print(7, c, s.str());
    results.push_back(c.pass);
  }

  // 8. discretization sanity and grid independence
  {
    Criterion c;
    double worst = 0.0;
    const auto scan = [&](const DecompositionReport& r) {
      for (const char* name : {"d∘d = 0", "⟨dα, β⟩ = ⟨α, δβ⟩"}) {
        const double v = residual(r, name);
        worst = std::max(worst, v);
        c.require(v <= 1e-10, label(r) + " " + name);
      }
    };
    scan(flat);
    for (const auto& r : fleet) scan(r);
    double slowest = 0.0;
    for (int seed = 1; seed <= fleet_size; ++seed) {
      const auto t0 = Clock::now();
      const DecompositionReport& coarse = fleet[static_cast<std::size_t>(seed - 1)];
      try {
        const FormMetric m(make_perturbed_structure(12, static_cast<std::uint64_t>(seed), amplitude, modes));
        for (int p = 0; p <= 2; ++p) {
          const HarmonicBasis b = harmonic_basis(p, m, opt.solver);
          c.require(b.dimension() == coarse.betti[static_cast<std::size_t>(p)],
                    "seed " + std::to_string(seed) + " b" + std::to_string(p) + " N=12 " + std::to_string(b.dimension()));
        }
      } catch (const std::exception& e) {
        c.require(false, "seed " + std::to_string(seed) + " N=12: " + e.what());
      }
      slowest = std::max(slowest, seconds_since(t0));
    }
    std::ostringstream s;
    s << "d∘d and adjointness worst " << worst << "; harmonic dimensions N=8 vs N=12 on " << fleet_size
      << " structures, slowest N=12 " << slowest << " s";
    print(8, c, s.str());
    results.push_back(c.pass);
  }

  int failed = 0;
  for (bool ok : results) failed += ok ? 0 : 1;
  std::cout << (failed ? "FAIL" : "PASS") << "  " << results.size() - static_cast<std::size_t>(failed) << "/"
            << results.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
