// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "rlab/verify.hpp"

using namespace rlab;

namespace {

struct Criterion {
  int id;
  std::string what;
  std::vector<std::function<VerificationReport()>> runs;
};

TestFunction f1() {
  TestFunction f = TestFunction::plane_wave(make_tuple({0.13}));
  f.add(0.5, make_tuple({cplx(0.4, -0.2)}));
  return f;
}

}  // namespace

int main() {
  const SystemParams p = reference_params();
  const std::uint64_t seed = 20240917;
  auto id = [&](const std::string& name) {
    return [=] { return run_identity(name, p, 0, seed); };
  };

  std::vector<Criterion> all;
  all.push_back({1, "S2 relation suite, 1000 points each, rel <= 1e-10", {id("s2-relations")}});
  all.push_back({2, "S2^-1 residues, (m,k) in {0,1}^2, <= 1e-8", {id("s2-residues")}});
  {
    Criterion c{3, "Fourier transform of K at lambda in {0, 0.1, 0.3, 0.1+0.1i}, <= 1e-8", {}};
    for (cplx l : {cplx(0), cplx(0.1), cplx(0.3), cplx(0.1, 0.1)})
      c.runs.push_back([=] { return check_fourier(p, l, 1e-8); });
    all.push_back(c);
  }
  all.push_back({4, "degenerate Rains identity, n=1 <= 1e-8, n=2 <= 1e-5", {id("rains-im-1"), id("rains-im-2")}});
  all.push_back({5, "A1 <-> A1 balanced identity at the midpoint, <= 1e-6", {id("rains-id2")}});
  all.push_back({6, "Q* Lambda exchange at n=2 on 5 probes, <= 1e-5", {id("exchange-qstar-lambda")}});
  all.push_back({7, "Lambda* Lambda exchange at n=2, <= 1e-5", {id("exchange-lambdastar-lambda")}});
  all.push_back({8, "Q and Q* eigenvalues, n=1 <= 1e-8, n=2 <= 1e-4",
                 {id("eigen-q-1"), id("eigen-qstar-1"), id("eigen-q-2"), id("eigen-qstar-2")}});
  all.push_back({9, "reflection symmetry, n=2 <= 1e-6, n=3 <= 1e-4", {id("reflection-2"), id("reflection-3")}});
  all.push_back({10, "bispectral duality at n=2, <= 1e-6", {id("duality-2")}});
  {
    Criterion c{11, "Noumi-Sano / Macdonald commutativity at n=2, all r,s, <= 1e-10", {}};
    TestFunction f2 = TestFunction::plane_wave(make_tuple({0.13, -0.21}));
    f2.add(0.5, make_tuple({cplx(0.4, -0.2), cplx(-0.3, 0.1)}));
    Tuple x = make_tuple({cplx(0.3, 0.1), cplx(-0.2, 0.05)});
    for (int r = 1; r <= 2; ++r)
      for (int s = 1; s <= 2; ++s) c.runs.push_back([=] { return check_ns_commutativity(r, s, p, f2, x, 1e-10); });
    all.push_back(c);
  }
  {
    Criterion c{12, "Noumi-Sano residues at n=1, (m,k) up to (1,1), <= 1e-8", {}};
    for (int m = 0; m <= 1; ++m)
      for (int k = 0; k <= 1; ++k) c.runs.push_back([=] { return check_ns_residue(m, k, p, 0.1, 0.3, f1(), 1e-8); });
    for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}})
      c.runs.push_back([=] { return check_ns_residue_sum(a, b, p, 0.1, 0.3, f1(), 1e-8); });
    all.push_back(c);
  }
  all.push_back({13, "E asymptotics: decay slope within 20% of the band, coefficient <= 1e-6", {id("e-asymptotics")}});
  all.push_back({14, "Appendix C inequalities, 1e5 trials each, no violation beyond 1e-12", {id("appendix-c")}});
  all.push_back({15, "quadrature honesty, >= 95% of the corpus within 3x the estimate", {id("quadrature-honesty")}});

  bool ok = true;
  for (const auto& c : all) {
    bool pass = true;
    double worst = 0, tol = 0;
    std::string note;
    for (const auto& run : c.runs) {
      try {
        VerificationReport r = run();
        pass = pass && r.pass;
        if (r.rel_residual >= worst) {
          worst = r.rel_residual;
          tol = r.tolerance;
        }
        if (!r.pass && note.empty()) note = " first failure: " + r.identity;
      } catch (const std::exception& e) {
        pass = false;
        if (note.empty()) note = std::string(" error: ") + e.what();
      }
    }
    ok = ok && pass;
    std::printf("%s criterion %d: %s (worst residual %.3g, tolerance %.3g)%s\n", pass ? "PASS" : "FAIL", c.id,
                c.what.c_str(), worst, tol, note.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
