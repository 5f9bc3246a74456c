#pragma once

#include "gapscope/spectrum.hpp"

#include <string>

namespace gapscope {

/// Static band diagram: energy axis, one rectangle per band, a diamond glyph
/// at each closed gap. Byte-identical output for identical reports.
std::string band_diagram_svg(const SpectrumReport& rep);

} // namespace gapscope
