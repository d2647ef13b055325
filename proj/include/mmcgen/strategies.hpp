#pragma once

#include "mmcgen/ground_structure.hpp"
#include "mmcgen/optimizer.hpp"
#include "mmcgen/problem.hpp"

#include <cstdint>

namespace mmcgen
{
	/// Regular array of cross-braced rectangular cells (4 corners, 4 sides, 2 diagonals).
	struct BaseCellSpec
	{
		int cells_x = 3;
		int cells_y = 3;
		/// Initial half-width; <= 0 selects 0.03 min(lx, ly).
		double t0 = 0.0;

		void validate() const;
		double thickness(const DesignDomain &domain) const;
	};

	/// Cell array spanning the domain. Cells overlapping a void are dropped together
	/// with nodes left without components. The node nearest each load point is moved
	/// onto it and pinned; nodes on a vertical support slide only in y, nodes on a
	/// horizontal support only in x.
	GroundStructure strategy1(const BaseCellSpec &spec, const DesignDomain &domain);

	/// Runs `pre_iters` (1..40) frozen-thickness iterations from the strategy-1 layout
	/// and returns the moved layout with the original thicknesses (or the optimized
	/// ones when reset_thickness is false).
	GroundStructure strategy2(const BaseCellSpec &spec, const DesignDomain &domain, const FeaModel &model,
	                          const OptimizationConfig &config, int pre_iters, bool reset_thickness = true);

	/// Same with pre_iters drawn uniformly from 1..max_pre_iters using `seed`.
	GroundStructure strategy2(const BaseCellSpec &spec, const DesignDomain &domain, const FeaModel &model,
	                          const OptimizationConfig &config, std::uint64_t seed, int max_pre_iters = 40);

	int draw_pre_iters(std::uint64_t seed, int max_pre_iters = 40);

	/// Strategy-1 layout plus n_extra components between distinct, previously
	/// unconnected node pairs, sampled without replacement.
	GroundStructure strategy3(const BaseCellSpec &spec, const DesignDomain &domain, int n_extra, std::uint64_t seed);

	/// Number of node pairs not yet joined by a component.
	int available_extra_edges(const GroundStructure &gs);
} // namespace mmcgen
