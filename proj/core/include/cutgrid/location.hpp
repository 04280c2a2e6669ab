#pragma once

#include <cstdint>

namespace cutgrid {

enum class Location : uint8_t { kUndefined = 0, kIn = 1, kOut = 2, kCut = 3 };

inline const char* to_string(Location loc) {
  switch (loc) {
    case Location::kIn: return "in";
    case Location::kOut: return "out";
    case Location::kCut: return "cut";
    default: return "undefined";
  }
}

inline Location flipped(Location loc) {
  if (loc == Location::kIn) return Location::kOut;
  if (loc == Location::kOut) return Location::kIn;
  return loc;
}

}  // namespace cutgrid
