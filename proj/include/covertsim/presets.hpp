#ifndef COVERTSIM_PRESETS_HPP
#define COVERTSIM_PRESETS_HPP

#include <string_view>
#include <vector>

namespace covertsim::harness {

// Built-in experiment presets (fig3, fig6, fig12). The same text ships as
// files under presets/ for reference; the embedded copies are what
// --preset loads, so runs do not depend on the working directory.
std::string_view preset_text(std::string_view name);
std::vector<std::string_view> preset_names();

}  // namespace covertsim::harness

#endif  // COVERTSIM_PRESETS_HPP
