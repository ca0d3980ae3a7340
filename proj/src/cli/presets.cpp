#include "bautin/cli/presets.hpp"

#include <algorithm>
#include <string>

#include "bautin/errors.hpp"

namespace bautin::cli {

namespace {

const char* const kPair =
    "model.omega = 0.01\nmodel.a = 0.8\nmodel.eta = 0.05\nmodel.sigma = 3\nmodel.r_m = 1.35\n"
    "coupling.n = 2\ncoupling.kappa1 = 0.001\n"
    "integrator.mode = noisy\nintegrator.dt = 0.001\nintegrator.t_end = 1000\n"
    "integrator.sample_dt = 0.05\nintegrator.noise_amplitude = 1e-5\n";

const char* const kFast =
    "model.omega = 3\nmodel.sigma = 3\nmodel.r_m = 1.35\ncoupling.n = 2\n";

std::vector<Preset> build() {
  const std::string pair = kPair;
  const std::string fast = kFast;
  const std::string branch = fast + "scan.kind = branch\nscan.u_min = -0.99\nscan.u_max = 0.99\nscan.u_n = 100\n";
  const std::string boundary = fast + "scan.kind = boundary\n";
  return {
      {"fig2", PresetKind::simulate, "single burster, deterministic alternation of active and quiescent phases",
       "coupling.n = 1\ncoupling.kappa1 = 0\ncoupling.kappa2 = 0\nmodel.omega = 3\nmodel.a = 0.8\n"
       "model.eta = 0.1\nmodel.sigma = 4\nmodel.r_m = 1.35\nintegrator.mode = adaptive\n"
       "integrator.noise_amplitude = 0\nintegrator.t_end = 400\nintegrator.sample_dt = 0.01\n"
       "initial.r0 = 0.1\ninitial.u0 = 0\n"},
      {"fig3", PresetKind::simulate, "two bursters, inphase to antiphase within each burst",
       pair + "coupling.kappa2 = 0.2\nanalysis.replicas = 10\n"},
      {"fig4", PresetKind::simulate, "two bursters, antiphase to inphase within each burst",
       pair + "coupling.kappa2 = -0.2\nanalysis.replicas = 10\n"},
      {"fig3_eta005", PresetKind::simulate,
       "as fig3 with eta = 0.005 (slower passage, longer bursts)",
       pair + "coupling.kappa2 = 0.2\nmodel.eta = 0.005\nintegrator.t_end = 6000\nanalysis.replicas = 10\n"},
      {"fig4_eta005", PresetKind::simulate,
       "as fig4 with eta = 0.005 (slower passage, longer bursts)",
       pair + "coupling.kappa2 = -0.2\nmodel.eta = 0.005\nintegrator.t_end = 6000\nanalysis.replicas = 10\n"},
      {"fig5a", PresetKind::scan, "fast-subsystem equilibria against u, kappa1 = 0.001, kappa2 = 0.2",
       branch + "coupling.kappa1 = 0.001\ncoupling.kappa2 = 0.2\n"},
      {"fig5b", PresetKind::scan, "fast-subsystem equilibria against u, kappa1 = -0.001, kappa2 = 0.2",
       branch + "coupling.kappa1 = -0.001\ncoupling.kappa2 = 0.2\n"},
      {"fig5c", PresetKind::scan, "fast-subsystem equilibria against u, kappa1 = 0.001, kappa2 = -0.2",
       branch + "coupling.kappa1 = 0.001\ncoupling.kappa2 = -0.2\n"},
      {"fig5d", PresetKind::scan, "fast-subsystem equilibria against u, kappa1 = -0.001, kappa2 = -0.2",
       branch + "coupling.kappa1 = -0.001\ncoupling.kappa2 = -0.2\n"},
      {"fig6", PresetKind::scan, "stability regions in the (u, sigma) plane",
       boundary + "coupling.kappa1 = 0.001\ncoupling.kappa2 = 0.2\nscan.plane = sigma\n"
                  "scan.lambda_min = 1.5\nscan.lambda_max = 8\nscan.lambda_n = 100\n"},
      {"fig7", PresetKind::scan, "stability regions in the (u, r_m) plane",
       boundary + "coupling.kappa1 = 0.001\ncoupling.kappa2 = 0.2\nscan.plane = r_m\n"
                  "scan.lambda_min = 1.15\nscan.lambda_max = 1.4\nscan.lambda_n = 100\n"},
      {"fig8", PresetKind::scan, "stability regions in the (u, kappa1) plane, kappa2 = 0.2",
       boundary + "coupling.kappa1 = 0\ncoupling.kappa2 = 0.2\nscan.plane = kappa1\n"
                  "scan.lambda_min = -0.1\nscan.lambda_max = 0.1\nscan.lambda_n = 101\n"},
      {"fig9", PresetKind::scan, "stability regions in the (u, kappa1) plane, kappa2 = -0.2",
       boundary + "coupling.kappa1 = 0\ncoupling.kappa2 = -0.2\nscan.plane = kappa1\n"
                  "scan.lambda_min = -0.1\nscan.lambda_max = 0.1\nscan.lambda_n = 101\n"},
      {"fig10", PresetKind::scan, "stability regions in the (u, kappa2) plane, kappa1 = 0.001",
       boundary + "coupling.kappa1 = 0.001\ncoupling.kappa2 = 0\nscan.plane = kappa2\n"
                  "scan.lambda_min = -0.4\nscan.lambda_max = 0.4\nscan.lambda_n = 101\n"},
      {"fig11", PresetKind::scan, "stability regions in the (u, kappa2) plane, kappa1 = -0.001",
       boundary + "coupling.kappa1 = -0.001\ncoupling.kappa2 = 0\nscan.plane = kappa2\n"
                  "scan.lambda_min = -0.4\nscan.lambda_max = 0.4\nscan.lambda_n = 101\n"},
      {"fig12", PresetKind::simulate, "three bursters, splay to inphase within each burst",
       "coupling.n = 3\ncoupling.kappa1 = -0.001\ncoupling.kappa2 = -0.2\nmodel.omega = 0.1\n"
       "model.a = 0.8\nmodel.eta = 0.005\nmodel.sigma = 5\nmodel.r_m = 1.35\n"
       "integrator.mode = noisy\nintegrator.dt = 0.001\nintegrator.t_end = 6000\n"
       "integrator.sample_dt = 0.05\nintegrator.noise_amplitude = 1e-5\nanalysis.replicas = 5\n"},
      {"slowpassage", PresetKind::simulate,
       "delay of the inphase loss of stability against the frozen-u prediction",
       pair + "coupling.kappa2 = 0.2\nmodel.eta = 0.005\nmodel.omega = 0.0003\n"
              "integrator.t_end = 6000\nanalysis.replicas = 3\n"},
      {"table1", PresetKind::analytic, "det-zero points of the symmetric branches, kappa2 = 0.2",
       fast + "coupling.kappa1 = 0\ncoupling.kappa2 = 0.2\n"},
      {"table2", PresetKind::analytic, "det-zero points of the symmetric branches, kappa2 = -0.2",
       fast + "coupling.kappa1 = 0\ncoupling.kappa2 = -0.2\n"},
  };
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  const auto& all = presets();
  auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return *it;
}

std::string_view kind_name(PresetKind k) {
  switch (k) {
    case PresetKind::simulate:
      return "simulate";
    case PresetKind::scan:
      return "scan";
    case PresetKind::analytic:
      return "analytic";
  }
  return "unknown";
}

}  // namespace bautin::cli
