#pragma once

#include <string>

namespace kgo::cli {

/// Shortest round-trip decimal representation (17 significant digits max),
/// locale independent. Keeps command output byte-deterministic.
std::string format_double(double value);

}  // namespace kgo::cli
