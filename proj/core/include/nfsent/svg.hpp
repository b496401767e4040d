#pragma once

#include <string>

#include "nfsent/trace_io.hpp"

namespace nfsent {

/// Log-scale intensity panel: forward solid, backward dashed, normalized to the joint maximum and
/// clipped at six decades below it.
std::string render_intensity_svg(const TraceTable& table);

/// Real parts of both amplitudes, normalized to the joint maximum, with the hyperfine schedule
/// overlaid (dash-dot) when the table carries one.
std::string render_amplitude_svg(const TraceTable& table);

}  // namespace nfsent
