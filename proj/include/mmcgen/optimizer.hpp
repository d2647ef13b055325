#pragma once

#include "mmcgen/fea.hpp"
#include "mmcgen/ground_structure.hpp"
#include "mmcgen/mma.hpp"
#include "mmcgen/sensitivity.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mmcgen
{
	enum class UpdateMethod
	{
		mma,
		projected_gradient
	};

	struct OptimizationConfig
	{
		double vbar = 0.35;
		int max_iters = 150;
		/// Per-iteration node displacement cap; <= 0 selects 2% of the domain diagonal.
		double move_limit_xy = 0.0;
		/// Per-iteration thickness change cap; <= 0 selects 1% of min(lx, ly).
		double move_limit_t = 0.0;
		/// Upper thickness bound; <= 0 selects 0.1 min(lx, ly).
		double t_max = 0.0;
		/// Zero thickness sensitivities so only node positions move.
		bool freeze_thickness = false;
		/// Stop once the normalized design change falls below this (0 = never).
		double tolerance = 0.0;
		UpdateMethod method = UpdateMethod::mma;
		std::uint64_t seed = 0;
		TdfParams tdf;

		void validate() const;
	};

	struct OptimizationHistory
	{
		std::vector<double> compliance;
		std::vector<double> volume_fraction;
		/// Max |d_new - d_old| / (upper - lower) over the update leading to the record; 0 for the first.
		std::vector<double> max_change;
		GroundStructure final_design;
		AnalysisResult final_analysis;
		bool converged = false;
		/// Set when the run aborted; the history holds everything before the failure.
		std::optional<std::string> error;

		std::size_t size() const { return compliance.size(); }
	};

	/// Applies gradient updates to one design under the volume constraint, keeping
	/// the MMA asymptote history between calls.
	class DesignUpdater
	{
	public:
		DesignUpdater(const GroundStructure &initial, const Grid &grid, const OptimizationConfig &config);

		/// g is the current constraint value V/|D| - vbar.
		GroundStructure update(const GroundStructure &design, GradientVector gradients, double g);

		double last_change() const { return last_change_; }
		const Eigen::VectorXd &lower() const { return lower_; }
		const Eigen::VectorXd &upper() const { return upper_; }

	private:
		OptimizationConfig config_;
		Eigen::VectorXd lower_, upper_, move_;
		std::optional<Mma> mma_;
		double last_change_ = 0.0;
	};

	/// TDF -> densities -> FEA -> gradients -> update, for config.max_iters updates.
	/// The returned history has one record per analysed design (max_iters + 1 when the
	/// run completes).
	OptimizationHistory run_optimization(const GroundStructure &ground, const FeaModel &model, const OptimizationConfig &config);

	/// CSV: iteration,compliance,volume_fraction,max_change
	void write_history_csv(std::ostream &out, const OptimizationHistory &history);
} // namespace mmcgen
