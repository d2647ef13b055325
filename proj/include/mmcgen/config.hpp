#pragma once

#include "mmcgen/dataset.hpp"
#include "mmcgen/optimizer.hpp"
#include "mmcgen/problem.hpp"
#include "mmcgen/strategies.hpp"

#include <optional>
#include <string>

namespace mmcgen
{
	/// Malformed or inconsistent configuration document.
	class ConfigError : public Error
	{
	public:
		using Error::Error;
	};

	/// Initial design for a single optimization run.
	struct InitialDesign
	{
		int strategy = 1;
		BaseCellSpec cells;
		/// Strategy 2; 0 draws from [1, 40] with the run seed.
		int pre_iters = 0;
		/// Strategy 3.
		int n_extra = 20;
		/// Ground-structure JSON file; overrides the strategy when set.
		std::optional<std::string> ground_structure;
	};

	/// Whole configuration file (see docs/config.md).
	struct RunConfig
	{
		ProblemSpec problem = ProblemSpec::cantilever();
		OptimizationConfig optimizer;
		InitialDesign initial;
		DatasetPlan plan;
		int load_pos = 0;
		double threshold = 0.5;
	};

	/// Throws ConfigError with a diagnostic on malformed input.
	RunConfig parse_config(const std::string &json_text);
	RunConfig load_config(const std::string &path);

	std::string serialize(const OptimizationConfig &config);
	/// Fields absent from the document keep the values in `base`.
	OptimizationConfig parse_optimizer(const std::string &json_text, OptimizationConfig base = {});

	/// Builds the initial ground structure for `label`.
	GroundStructure build_initial(const RunConfig &config, int label, std::uint64_t seed);
} // namespace mmcgen
