#pragma once

namespace lattice_walks {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lattice_walks
