#include "nsopt/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nsopt {

std::size_t Dataset::total_nnz() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.x.nnz();
  return n;
}

double Dataset::max_row_norm() const {
  double best = 0.0;
  for (const auto& row : rows) {
    best = std::max(best, row.x.squared_norm());
  }
  return std::sqrt(best);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("libsvm parse error at line " +
                           std::to_string(line_no) + ": " + why);
}

double parse_double(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    parse_fail(line_no, "not a number: '" + tok + "'");
  }
  if (used != tok.size()) parse_fail(line_no, "trailing junk in '" + tok + "'");
  return v;
}

double normalize_label(double raw, const ParseOptions& opts) {
  if (opts.positive_class.has_value()) {
    return raw == *opts.positive_class ? 1.0 : -1.0;
  }
  return raw > 0.0 ? 1.0 : -1.0;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const ParseOptions& opts) {
  Dataset ds;
  std::size_t max_index = 0;  // 1-based as in the file
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;  // blank or comment-only line
    const double raw_label = parse_double(tok, line_no);
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
    unsigned long last_idx = 0;  // 1-based, 0 = none yet
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 ||
          colon + 1 == tok.size()) {
        parse_fail(line_no, "malformed index:value pair '" + tok + "'");
      }
      const std::string idx_str = tok.substr(0, colon);
      std::size_t used = 0;
      unsigned long idx = 0;
      try {
        idx = std::stoul(idx_str, &used);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad index '" + idx_str + "'");
      }
      if (used != idx_str.size() || idx == 0) {
        parse_fail(line_no, "bad index '" + idx_str + "' (1-based expected)");
      }
      const double val = parse_double(tok.substr(colon + 1), line_no);
      if (idx <= last_idx) {
        parse_fail(line_no, "indices not strictly increasing");
      }
      last_idx = idx;
      if (val == 0.0) continue;  // keep the no-stored-zeros invariant
      indices.push_back(static_cast<std::uint32_t>(idx - 1));
      values.push_back(val);
      max_index = std::max(max_index, static_cast<std::size_t>(idx));
    }
    DataRow row;
    row.x = SparseVector(std::move(indices), std::move(values));
    row.label = normalize_label(raw_label, opts);
    ds.rows.push_back(std::move(row));
  }
  if (ds.rows.empty()) {
    throw std::runtime_error("libsvm parse error: empty input (no samples)");
  }
  ds.dimension = opts.dimension > 0 ? opts.dimension : max_index;
  for (const auto& row : ds.rows) {
    if (row.x.min_dimension() > ds.dimension) {
      throw std::runtime_error(
          "libsvm parse error: feature index exceeds the pinned dimension");
    }
  }
  return ds;
}

namespace {

std::string gunzip_to_string(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) {
    throw std::runtime_error("cannot open gzip file: " + path);
  }
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(f, buf, sizeof(buf))) > 0) {
    out.append(buf, static_cast<std::size_t>(n));
  }
  const bool bad = n < 0;
  gzclose(f);
  if (bad) throw std::runtime_error("gzip read error in " + path);
  return out;
}

}  // namespace

Dataset parse_libsvm_file(const std::string& path, const ParseOptions& opts) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    std::istringstream ss(gunzip_to_string(path));
    return parse_libsvm(ss, opts);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return parse_libsvm(in, opts);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  char buf[64];
  for (const auto& row : ds.rows) {
    out << (row.label > 0 ? "+1" : "-1");
    for (std::size_t i = 0; i < row.x.nnz(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row.x.values[i]);
      out << ' ' << (row.x.indices[i] + 1) << ':' << buf;
    }
    out << '\n';
  }
}

Dataset subsample(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > ds.size()) {
    throw std::invalid_argument("subsample: k out of range");
  }
  // selection sampling: order preserving, deterministic in the seed
  Rng rng(seed);
  Dataset out;
  out.dimension = ds.dimension;
  out.rows.reserve(k);
  std::size_t need = k;
  std::size_t left = ds.size();
  for (const auto& row : ds.rows) {
    if (need == 0) break;
    std::uniform_int_distribution<std::size_t> pick(0, left - 1);
    if (pick(rng) < need) {
      out.rows.push_back(row);
      --need;
    }
    --left;
  }
  return out;
}

Dataset make_synthetic_dataset(std::size_t m, std::size_t dim,
                               std::uint64_t seed) {
  if (m < 2 || dim < 6) {
    throw std::invalid_argument("make_synthetic_dataset: m >= 2, dim >= 6");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // tiered feature popularity: without a rare tail nothing ever reaches an
  // exact zero under l1 prox steps at desk-scale budgets
  const std::size_t n_common = std::max<std::size_t>(2, dim / 6);
  const std::size_t n_medium = std::max<std::size_t>(2, dim / 3);
  std::vector<double> popularity(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (j < n_common) {
      popularity[j] = 0.15 + 0.40 * unif(rng);
    } else if (j < n_common + n_medium) {
      popularity[j] = 0.01 + 0.04 * unif(rng);
    } else {
      popularity[j] = (0.5 + 2.5 * unif(rng)) / static_cast<double>(m);
    }
  }

  // sparse linear teacher supported on the common+medium features
  Vector teacher(dim, 0.0);
  const std::size_t informative = n_common + n_medium;
  const std::size_t support = std::max<std::size_t>(2, informative / 2);
  std::vector<std::size_t> cand(informative);
  for (std::size_t j = 0; j < informative; ++j) cand[j] = j;
  for (std::size_t j = 0; j < support; ++j) {
    std::uniform_int_distribution<std::size_t> pick(j, cand.size() - 1);
    std::swap(cand[j], cand[pick(rng)]);
    teacher[cand[j]] = 2.0 * gauss(rng);
  }

  std::vector<double> margins(m);
  Dataset ds;
  ds.dimension = dim;
  ds.rows.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    double z = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (unif(rng) < popularity[j]) {
        idx.push_back(static_cast<std::uint32_t>(j));
        val.push_back(1.0);
        z += teacher[j];
      }
    }
    ds.rows[i].x = SparseVector(std::move(idx), std::move(val));
    margins[i] = z + 0.5 * gauss(rng);
  }
  // median split keeps the classes balanced
  std::vector<double> sorted = margins;
  std::nth_element(sorted.begin(), sorted.begin() + m / 2, sorted.end());
  const double threshold = sorted[m / 2];
  for (std::size_t i = 0; i < m; ++i) {
    ds.rows[i].label = margins[i] > threshold ? 1.0 : -1.0;
  }
  return ds;
}

}  // namespace nsopt
