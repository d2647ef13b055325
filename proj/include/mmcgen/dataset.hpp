#pragma once

#include "mmcgen/optimizer.hpp"
#include "mmcgen/problem.hpp"
#include "mmcgen/raster.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mmcgen
{
	inline constexpr int kImageSize = 200;

	/// Grid dimensions that cannot be mapped onto the square image format.
	class UnsupportedDimsError : public Error
	{
	public:
		using Error::Error;
	};

	enum class ResizeMode
	{
		stretch, ///< nearest-neighbour with independent integer row/column factors
		pad      ///< one integer factor for both axes, void rows added above and below
	};

	/// ny x nx raster -> 200 x 200. Throws UnsupportedDimsError when the factors are
	/// not integers.
	GrayImage resize_to_square(const GrayImage &raster, ResizeMode mode = ResizeMode::stretch);
	/// Inverse of resize_to_square for a source of `rows` x `cols`.
	GrayImage resize_from_square(const GrayImage &image, int rows, int cols, ResizeMode mode = ResizeMode::stretch);
	/// True when resize_to_square accepts a rows x cols raster.
	bool resizable(int rows, int cols, ResizeMode mode = ResizeMode::stretch);

	struct StrategyMix
	{
		double s1 = 0.2;
		double s2 = 0.4;
		double s3 = 0.4;
	};

	struct DatasetPlan
	{
		int samples_per_label = 2;
		/// Labels to generate; empty means all of them.
		std::vector<int> labels;
		StrategyMix mix;
		/// Cell counts per axis are drawn uniformly from [cells_min, cells_max].
		int cells_min = 2;
		int cells_max = 6;
		/// Strategy 3 adds min(n_extra, available) components.
		int n_extra = 20;
		/// Strategy 2 draws its pre-iteration count from [1, pre_iters_max].
		int pre_iters_max = 40;
		/// Fresh-seed attempts per sample slot before the slot is given up.
		int max_attempts = 8;
		double t0 = 0.0;
		double threshold = 0.5;
		ResizeMode resize = ResizeMode::stretch;
		OptimizationConfig optimizer;

		void validate() const;
	};

	struct Sample
	{
		std::string id;
		std::string image; ///< relative path of the 200 x 200 PNG
		std::string raw;   ///< relative path of the pre-resize PGM
		int load_pos = 0;
		int genus = 0;
		int complexity_level = 0;
		int betti0 = 0;
		double compliance = 0.0;
		double volume_fraction = 0.0;
		double m_nd = 0.0;
		int strategy = 1;
		std::uint64_t seed = 0;
		int source_nx = 0;
		int source_ny = 0;
		int cells_x = 0;
		int cells_y = 0;
		int pre_iters = 0;
		int n_extra = 0;
		int attempt = 0;
		int iterations = 0;

		bool operator==(const Sample &) const = default;
	};

	std::string serialize(const Sample &s);
	Sample parse_sample(const std::string &line);

	struct DatasetManifest
	{
		/// Problem and plan snapshot (the spec.json document).
		std::string spec_json;
		std::vector<Sample> samples;
		std::map<int, int> per_label_counts;
		/// SHA-256 of spec.json.
		std::string config_hash;

		/// Throws on duplicate ids or counts that disagree with the samples.
		void validate() const;
		bool operator==(const DatasetManifest &) const = default;
	};

	/// One sample per line, sorted by (load_pos, id).
	std::string serialize_jsonl(const DatasetManifest &m);
	DatasetManifest parse_manifest(const std::string &jsonl, const std::string &spec_json = {});
	/// Reads manifest.jsonl and spec.json from a dataset directory.
	DatasetManifest load_manifest(const std::filesystem::path &dir);

	std::string sha256_hex(const std::string &bytes);

	struct GenerateOptions
	{
		int jobs = 1;
		/// Reuse completed labels found under parts/.
		bool resume = false;
		/// Stop after this many labels have been generated in this call (0 = no limit).
		int stop_after = 0;
		std::function<void(int label, int accepted, int failed)> progress;
	};

	struct GenerateResult
	{
		DatasetManifest manifest;
		bool complete = false;
		int labels_generated = 0;
		int labels_reused = 0;
		std::vector<std::string> failures;
		/// Hex SHA-256 of manifest.jsonl (empty when incomplete).
		std::string manifest_hash;
	};

	/// Writes images/, raw/, parts/, spec.json, manifest.jsonl and manifest.sha256 under
	/// `out`. Every run draws from its own stream derived from (master_seed, label,
	/// slot, attempt), so results do not depend on `jobs`. Throws when a label ends up
	/// with no accepted sample.
	GenerateResult generate_samples(const ProblemSpec &spec, const DatasetPlan &plan, std::uint64_t master_seed,
	                                const std::filesystem::path &out, const GenerateOptions &options = {});

	/// Optimizes and measures a single sample slot; returns false with `reason` set when
	/// the run is rejected.
	struct SampleOutcome
	{
		bool accepted = false;
		std::string reason;
		Sample sample;
		ByteImage raw;
		ByteImage image;
	};
	SampleOutcome run_sample(const ProblemSpec &spec, const DatasetPlan &plan, int label, int slot, int attempt,
	                         std::uint64_t seed);

	/// Whether a solid pixel of the ny x nx raster touches the load point.
	bool load_attached(const BinaryImage &binary, const ProblemSpec &spec, int label);

	struct LevelStats
	{
		int level = 0;
		int count = 0;
		double mean_compliance = 0.0;
		double mean_genus = 0.0;
	};

	struct DatasetSummary
	{
		int total = 0;
		std::vector<LevelStats> levels;
		std::map<int, int> per_label_counts;
		/// Labels with no sample.
		std::vector<int> empty_labels;
		/// Rank correlation between level and mean compliance over populated levels
		/// (NaN with fewer than two levels).
		double spearman_level_compliance = 0.0;
	};

	DatasetSummary summarize(const DatasetManifest &m, int num_labels);
	std::string to_json(const DatasetSummary &s, const DatasetManifest &m);

	/// Average-rank Spearman coefficient.
	double spearman(const std::vector<double> &x, const std::vector<double> &y);

	std::string serialize(const DatasetPlan &plan);
	DatasetPlan parse_plan(const std::string &json_text);
	std::string to_string(ResizeMode m);
} // namespace mmcgen
