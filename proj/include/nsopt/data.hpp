#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsopt/types.hpp"

namespace nsopt {

struct DataRow {
  SparseVector x;
  double label = 0.0;  // normalized to -1/+1

  bool operator==(const DataRow&) const = default;
};

struct Dataset {
  std::vector<DataRow> rows;
  std::size_t dimension = 0;

  std::size_t size() const { return rows.size(); }
  std::size_t total_nnz() const;
  double max_row_norm() const;

  bool operator==(const Dataset&) const = default;
};

struct ParseOptions {
  /// Pin the dimension (needed for subsets that miss the max-index feature).
  /// 0 means infer as max index + 1.
  std::size_t dimension = 0;
  /// When set, rows whose raw label equals this value map to +1 and all
  /// others to -1 (e.g. covtype class-2-vs-rest). When unset, raw labels
  /// <= 0 map to -1 and > 0 to +1.
  std::optional<double> positive_class;
};

/// Parses LIBSVM text: "label idx:val idx:val ...", 1-based strictly
/// increasing indices, '#' comments, blank lines skipped. Malformed input
/// throws std::runtime_error naming the line number.
Dataset parse_libsvm(std::istream& in, const ParseOptions& opts = {});

/// As above; transparently gunzips files ending in ".gz".
Dataset parse_libsvm_file(const std::string& path,
                          const ParseOptions& opts = {});

/// Writes rows back in LIBSVM text form (1-based indices, %.17g values).
void write_libsvm(std::ostream& out, const Dataset& ds);

/// k rows drawn uniformly without replacement, order preserving,
/// deterministic in the seed. Dimension is preserved.
Dataset subsample(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// Desk-scale stand-in for the sparse binary benchmark sets: binary
/// features with tiered popularity (a few common, a band of medium, a long
/// tail of rare features) and labels from a sparse linear teacher. The
/// rare tail is what l1 solvers are expected to zero out.
Dataset make_synthetic_dataset(std::size_t m, std::size_t dim,
                               std::uint64_t seed);

}  // namespace nsopt
