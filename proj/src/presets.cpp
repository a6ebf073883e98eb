#include "enaqt/presets.hpp"

namespace enaqt {

using nlohmann::json;

namespace {

json log_axis(const char* parameter, double lo, double hi, int points) {
  return {{"parameter", parameter}, {"log", {{"min", lo}, {"max", hi}, {"points", points}}}};
}

json values_axis(const char* parameter, std::vector<double> values) {
  return {{"parameter", parameter}, {"values", values}};
}

json gamma_axis(int points = 31) { return log_axis("gamma_deph", 1e-2, 1e3, points); }
json w_axis() { return log_axis("W_over_t", 0.05, 20.0, 25); }

json sweep(const std::string& name, json chain, json axis1, json axis2, int realizations) {
  json s = {{"name", name}, {"chain", std::move(chain)}, {"axis1", std::move(axis1)},
            {"realizations", realizations}};
  if (!axis2.is_null()) s["axis2"] = std::move(axis2);
  return s;
}

json doc(const std::string& name, std::vector<json> sweeps) {
  return {{"name", name}, {"master_seed", 1}, {"sweeps", sweeps}};
}

std::vector<Preset> build() {
  const json base = json::object();
  const json long_range = {{"hopping", "long_range"}};
  const json low_injection = {{"gamma_inj", 0.17}};
  const std::vector<double> fig3_w = {0, 0.5, 1, 2.5, 10, 20};
  const std::vector<double> fig2_gamma = {0, 0.05, 0.2, 1, 5};

  std::vector<Preset> out;

  out.push_back({"fig2", "current vs W/t at low dephasing (i_ext = 6), and i_ext in {5, 6} at zero dephasing",
                 doc("fig2", {sweep("fig2", base, w_axis(), values_axis("gamma_deph", fig2_gamma), 5000),
                              sweep("fig2_inset", base, w_axis(), values_axis("i_ext", {5, 6}), 5000)})});

  out.push_back({"fig3", "current vs dephasing for W/t in {0, 0.5, 1, 2.5, 10, 20}; IPR per W",
                 doc("fig3", {sweep("fig3", base, gamma_axis(), values_axis("W_over_t", fig3_w), 1000)})});

  out.push_back(
      {"fig4", "site populations at quantum / ENAQT / classical dephasing for W/t in {0, 1, 4}; J and delta_n vs dephasing",
       doc("fig4", {sweep("fig4a", {{"W_over_t", 0}}, values_axis("gamma_deph", {0.01, 30, 1000}), nullptr, 1),
                    sweep("fig4b", {{"W_over_t", 1}}, values_axis("gamma_deph", {0.01, 55, 1000}), nullptr, 1000),
                    sweep("fig4c", {{"W_over_t", 4}}, values_axis("gamma_deph", {0.01, 98, 1000}), nullptr, 1000),
                    sweep("fig4d", base, gamma_axis(40), values_axis("W_over_t", {0, 4}), 1000)})});

  out.push_back({"fig5", "two-exciton current vs dephasing for U in {0, 10t, 20t, 30t}",
                 doc("fig5", {sweep("fig5", {{"n_max", 2}}, gamma_axis(), values_axis("U_over_t", {0, 10, 20, 30}), 1)})});

  out.push_back({"appB", "fig2 and fig3 sweeps at eta = 0.01 (gamma_inj = 0.17)",
                 doc("appB", {sweep("appB_fig2", low_injection, w_axis(), values_axis("gamma_deph", fig2_gamma), 5000),
                              sweep("appB_fig3", low_injection, gamma_axis(), values_axis("W_over_t", fig3_w), 1000)})});

  out.push_back(
      {"appC", "current vs W/t for extraction sites 4-7; real- and eigen-space populations for i_ext in {5, 6}",
       doc("appC", {sweep("appC_iext", base, w_axis(), values_axis("i_ext", {4, 5, 6, 7}), 1000),
                    sweep("appC_pops", base, values_axis("W_over_t", {0, 1, 5, 20}), values_axis("i_ext", {5, 6}), 1000)})});

  out.push_back({"appD", "long-range hopping variants of fig2, fig3 and fig4d",
                 doc("appD", {sweep("appD_fig2", long_range, w_axis(), nullptr, 1000),
                              sweep("appD_fig3", long_range, gamma_axis(), values_axis("W_over_t", fig3_w), 1000),
                              sweep("appD_fig4d", long_range, gamma_axis(40), values_axis("W_over_t", {0, 4}), 1000)})});

  const json barrier_chain = {{"eps0", 300 * 144.0}, {"t", 144.0}, {"U_over_t", 50},
                              {"barrier", {{"site", 4}, {"height_over_t", 50}}}};
  out.push_back({"appE", "barrier chain (site 4, 50t) vs uniform chain: J, site densities vs dephasing",
                 doc("appE", {sweep("appE", barrier_chain, gamma_axis(), values_axis("barrier_height_over_t", {0, 50}), 1)})});

  const json interacting = {{"n_max", 2}, {"U_over_t", 50}};
  out.push_back({"appF", "two-exciton density-matrix diagonal at dephasing 0, 47, 500 (U = 50t); current vs dephasing",
                 doc("appF", {sweep("appF", interacting, values_axis("gamma_deph", {0, 47, 500}), nullptr, 1),
                              sweep("appF_current", {{"n_max", 2}}, gamma_axis(), values_axis("U_over_t", {0, 50}), 1)})});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace enaqt
