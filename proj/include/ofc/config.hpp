#pragma once

// Engineering budgets shared by every structure. Downstream space bounds
// inherit these, so they live in one place.

#include <cstdint>

namespace ofc::config {

/// A (1/r)-cutting has at most kCellsPerR * r cells.
inline constexpr std::int64_t kCellsPerR = 4;

/// Every conflict list of a (1/r)-cutting over n rects holds at most kConflictPerNR * n / r rects.
inline constexpr std::int64_t kConflictPerNR = 8;

/// Expected sampled rects per unit of r when building a cutting.
inline constexpr double kSampleRate = 0.5;

/// Failed cutting attempts before giving up.
inline constexpr int kCuttingRetries = 64;

/// Window list slack for the filtering-search interval lists in Stab2D.
inline constexpr std::int64_t kWindowSlack = 2;

/// Cap on enumerated subpaths; the subpath length shrinks until the count fits.
inline constexpr std::int64_t kMaxSubpaths = std::int64_t{1} << 16;

/// Instances below this total complexity skip the cascading structures.
inline constexpr std::int64_t kSmallInstance = 16;


/// Bootstrap rounds used when the caller does not say.
inline constexpr int kDefaultRounds = 1;

} // namespace ofc::config
