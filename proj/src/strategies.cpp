#include "mmcgen/strategies.hpp"

#include "mmcgen/rng.hpp"

#include <algorithm>
#include <limits>

namespace mmcgen
{
	void BaseCellSpec::validate() const
	{
		if (cells_x < 1 || cells_y < 1)
			throw Error("strategy: cell counts must be >= 1");
	}

	double BaseCellSpec::thickness(const DesignDomain &domain) const
	{
		return t0 > 0.0 ? t0 : 0.03 * std::min(domain.lx, domain.ly);
	}

	GroundStructure strategy1(const BaseCellSpec &spec, const DesignDomain &domain)
	{
		spec.validate();
		const double t = spec.thickness(domain);
		const double wx = domain.lx / spec.cells_x;
		const double wy = domain.ly / spec.cells_y;

		GroundStructure gs;
		const int stride = spec.cells_x + 1;
		for (int j = 0; j <= spec.cells_y; ++j)
			for (int i = 0; i <= spec.cells_x; ++i)
				gs.nodes.emplace_back(i == spec.cells_x ? domain.lx : i * wx, j == spec.cells_y ? domain.ly : j * wy);
		gs.mobility.assign(gs.nodes.size(), NodeMobility::free);

		for (int j = 0; j < spec.cells_y; ++j)
			for (int i = 0; i < spec.cells_x; ++i)
			{
				const int n00 = j * stride + i, n10 = n00 + 1, n01 = n00 + stride, n11 = n01 + 1;
				const Rect cell{gs.nodes[n00].x(), gs.nodes[n00].y(), gs.nodes[n11].x(), gs.nodes[n11].y()};
				if (std::any_of(domain.voids.begin(), domain.voids.end(), [&](const Rect &r) { return r.overlaps(cell); }))
					continue;
				gs.add_edge(n00, n10, t);
				gs.add_edge(n10, n11, t);
				gs.add_edge(n11, n01, t);
				gs.add_edge(n01, n00, t);
				gs.add_edge(n00, n11, t);
				gs.add_edge(n10, n01, t);
			}
		gs.remove_dangling_nodes();
		if (gs.edges.empty())
			throw Error("strategy: every base cell overlaps a void");

		const double tol = 1e-9 * std::max(domain.lx, domain.ly);
		for (int n = 0; n < gs.num_nodes(); ++n)
			for (const auto &s : domain.supports)
				if (s.contains(gs.nodes[n], tol))
				{
					const NodeMobility m = s.vertical() ? NodeMobility::fixed_x : NodeMobility::fixed_y;
					gs.mobility[n] = (gs.mobility[n] == NodeMobility::free || gs.mobility[n] == m) ? m : NodeMobility::pinned;
				}

		for (const auto &p : domain.load_points)
		{
			int best = 0;
			double best_d = std::numeric_limits<double>::infinity();
			for (int n = 0; n < gs.num_nodes(); ++n)
			{
				const double d = (gs.nodes[n] - p).squaredNorm();
				if (d < best_d)
				{
					best_d = d;
					best = n;
				}
			}
			gs.nodes[best] = p;
			gs.mobility[best] = NodeMobility::pinned;
		}
		gs.validate();
		return gs;
	}

	GroundStructure strategy2(const BaseCellSpec &spec, const DesignDomain &domain, const FeaModel &model,
	                          const OptimizationConfig &config, int pre_iters, bool reset_thickness)
	{
		if (pre_iters < 1 || pre_iters > 40)
			throw Error("strategy2: pre_iters must lie in [1, 40], got " + std::to_string(pre_iters));
		const GroundStructure initial = strategy1(spec, domain);
		OptimizationConfig pre = config;
		pre.freeze_thickness = true;
		pre.max_iters = pre_iters;
		pre.tolerance = 0.0;
		const OptimizationHistory history = run_optimization(initial, model, pre);
		if (history.error)
			throw Error("strategy2: pre-optimization failed: " + *history.error);
		GroundStructure out = history.final_design;
		if (reset_thickness)
			out.thickness = initial.thickness;
		return out;
	}

	int draw_pre_iters(std::uint64_t seed, int max_pre_iters)
	{
		if (max_pre_iters < 1 || max_pre_iters > 40)
			throw Error("strategy2: max_pre_iters must lie in [1, 40]");
		Rng rng(seed);
		return static_cast<int>(rng.uniform_int(1, max_pre_iters));
	}

	GroundStructure strategy2(const BaseCellSpec &spec, const DesignDomain &domain, const FeaModel &model,
	                          const OptimizationConfig &config, std::uint64_t seed, int max_pre_iters)
	{
		return strategy2(spec, domain, model, config, draw_pre_iters(seed, max_pre_iters));
	}

	int available_extra_edges(const GroundStructure &gs)
	{
		const long m = gs.num_nodes();
		return static_cast<int>(m * (m - 1) / 2 - gs.num_components());
	}

	GroundStructure strategy3(const BaseCellSpec &spec, const DesignDomain &domain, int n_extra, std::uint64_t seed)
	{
		if (n_extra < 0)
			throw Error("strategy3: n_extra must be >= 0");
		GroundStructure gs = strategy1(spec, domain);
		const int available = available_extra_edges(gs);
		if (n_extra > available)
			throw Error("strategy3: n_extra = " + std::to_string(n_extra) + " exceeds the " + std::to_string(available) +
			            " unconnected node pairs");
		if (n_extra == 0)
			return gs;

		std::vector<std::array<int, 2>> candidates;
		candidates.reserve(available);
		for (int a = 0; a < gs.num_nodes(); ++a)
			for (int b = a + 1; b < gs.num_nodes(); ++b)
				if (!gs.has_edge(a, b))
					candidates.push_back({a, b});

		const double t = spec.thickness(domain);
		Rng rng(seed);
		for (int k = 0; k < n_extra; ++k)
		{
			const auto pick = static_cast<std::size_t>(rng.uniform_int(k, static_cast<std::int64_t>(candidates.size()) - 1));
			std::swap(candidates[k], candidates[pick]);
			gs.add_edge(candidates[k][0], candidates[k][1], t);
		}
		gs.validate();
		return gs;
	}
} // namespace mmcgen
