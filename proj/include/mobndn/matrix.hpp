#ifndef MOBNDN_MATRIX_HPP
#define MOBNDN_MATRIX_HPP

#include "mobndn/simulation.hpp"

#include <filesystem>

namespace mobndn {

struct MatrixOptions
{
  std::vector<std::string> strategies{"fastforwarding", "flooding", "semiflooding"};
  /// AS grid side lengths: 2 -> 4AS, 3 -> 9AS, 4 -> 16AS.
  std::vector<int> gridSides{2, 3, 4};
  std::vector<std::string> levels{"low", "medium", "high"};
  int seeds = 10;
  /// First seed; run k uses firstSeed + k.
  uint64_t firstSeed = 1;
  std::optional<double> durationS;
  /// Parallel runs; 0 uses the OpenMP default.
  int threads = 0;
};

struct MatrixCell
{
  std::string strategy;
  std::string topology;
  std::string level;
  int completed = 0;
  int failed = 0;
};

struct MatrixResult
{
  std::vector<MatrixCell> cells;
  int runsExecuted = 0;
  int runsReused = 0;

  bool
  anyFailed() const;
};

/// Scenario document for one run of the matrix, derived from \p base.
nlohmann::json
matrixRunDocument(const nlohmann::json& base, const std::string& strategy, int gridSide,
                  const std::string& level, uint64_t seed, std::optional<double> durationS);

/** \brief Runs every strategy x topology x level x seed combination.
 *
 *  Each run writes <out>/runs/<cell>/seed-<n>/metrics.json atomically; runs whose
 *  metrics.json already exists are not repeated. A failed run leaves error.txt.
 *  Ends by rewriting <out>/summary.csv from the metrics files.
 */
MatrixResult
runMatrix(const nlohmann::json& base, const MatrixOptions& opts, const std::filesystem::path& out,
          const std::function<void(const std::string&)>& progress = {});

/// summary.csv from the metrics.json files under <out>/runs.
std::string
summarizeRuns(const std::filesystem::path& out, const MatrixOptions& opts);

/// Sample mean and standard deviation (n - 1 denominator; 0 for a single value).
std::pair<double, double>
meanStd(const std::vector<double>& xs);

/// Writes via a temporary file and rename.
void
writeFileAtomic(const std::filesystem::path& path, const std::string& content);

} // namespace mobndn

#endif // MOBNDN_MATRIX_HPP
