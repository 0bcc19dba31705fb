#include "covertsim/presets.hpp"

#include <stdexcept>
#include <string>

namespace covertsim::harness {

namespace {

// Detection power versus walk length: the analytic significance bound next
// to the measured H1 rate, for two path-loss exponents.
constexpr std::string_view kFig3 = R"(# fig3: significance bound beta versus t, alpha in {3,4}
[experiment]
kind = sweep-t
seed = 42
trials = 400

[channel]
noise_power_db = 0
path_loss_law = unbounded
fading = none
power_mode = critical

[warden]
m = 50
spacing = 0.5

[detector]
threshold_mode = auto

[schedule]
transmit_prob = 1.0

[sweep]
alpha_list = 3, 4
t_list = 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 28, 32, 36, 40
)";

// Randomized scheduling: expected statistic and H1 rate versus the
// transmission probability, for t in {50, 75, 100}.
constexpr std::string_view kFig6 = R"(# fig6: countermeasure sweep over the transmission probability p
[experiment]
kind = sweep-p
seed = 42
trials = 400

[channel]
noise_power_db = 0
path_loss_exponent = 3
path_loss_law = unbounded
fading = none
power_mode = critical

[warden]
m = 100
spacing = 0.5

[detector]
beta = 0.05
threshold_mode = auto

[sweep]
t_list = 50, 75, 100
p_list = 0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0
)";

// Secure-relay ratio versus network density for DBR and GBR, uniform and
// clustered placement, 200x100 m region, endpoints (200,50) -> (0,50).
constexpr std::string_view kFig12 = R"(# fig12: secure-relay ratio versus density, DBR vs GBR
[experiment]
kind = secure-ratio
seed = 42
trials = 500

[network]
width = 200
height = 100
detection_radius = 5
comm_radius = 20
clusters = 6
cluster_spread = 12
bs_x = 0
bs_y = 50
source_x = 200
source_y = 50
p_max = 0.25
placement_list = uniform, clustered
router_list = dbr, gbr
attempt_factor = 20

[sweep]
density_list = 0.005, 0.0075, 0.01, 0.0125, 0.015, 0.0175
)";

}  // namespace

std::string_view preset_text(std::string_view name) {
  if (name == "fig3") return kFig3;
  if (name == "fig6") return kFig6;
  if (name == "fig12") return kFig12;
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "'; available: fig3, fig6, fig12");
}

std::vector<std::string_view> preset_names() { return {"fig3", "fig6", "fig12"}; }

}  // namespace covertsim::harness
