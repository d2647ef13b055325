#include "mmcgen/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mmcgen
{
	void OptimizationConfig::validate() const
	{
		if (!(vbar > 0.0 && vbar < 1.0))
			throw Error("optimizer: vbar must lie in (0, 1)");
		if (max_iters < 0)
			throw Error("optimizer: max_iters must be >= 0");
		if (tolerance < 0.0)
			throw Error("optimizer: tolerance must be >= 0");
		tdf.validate();
	}

	DesignUpdater::DesignUpdater(const GroundStructure &initial, const Grid &grid, const OptimizationConfig &config)
	    : config_(config)
	{
		const int nv = initial.num_variables();
		const double min_side = std::min(grid.lx, grid.ly);
		const double move_xy = config.move_limit_xy > 0 ? config.move_limit_xy : 0.02 * std::hypot(grid.lx, grid.ly);
		const double move_t = config.move_limit_t > 0 ? config.move_limit_t : 0.01 * min_side;
		const double t_max = config.t_max > 0 ? config.t_max : 0.1 * min_side;

		lower_.resize(nv);
		upper_.resize(nv);
		move_.resize(nv);
		for (int n = 0; n < initial.num_nodes(); ++n)
		{
			const auto &p = initial.nodes[n];
			const auto m = initial.mobility[n];
			const bool fix_x = m == NodeMobility::fixed_x || m == NodeMobility::pinned;
			const bool fix_y = m == NodeMobility::fixed_y || m == NodeMobility::pinned;
			lower_(initial.x_index(n)) = fix_x ? p.x() : 0.0;
			upper_(initial.x_index(n)) = fix_x ? p.x() : grid.lx;
			lower_(initial.y_index(n)) = fix_y ? p.y() : 0.0;
			upper_(initial.y_index(n)) = fix_y ? p.y() : grid.ly;
			move_(initial.x_index(n)) = move_xy;
			move_(initial.y_index(n)) = move_xy;
		}
		for (int i = 0; i < initial.num_components(); ++i)
		{
			lower_(initial.t_index(i)) = 0.0;
			upper_(initial.t_index(i)) = std::max(t_max, initial.thickness[i]);
			move_(initial.t_index(i)) = move_t;
		}
		if (config.method == UpdateMethod::mma)
			mma_.emplace(lower_, upper_, move_);
	}

	GroundStructure DesignUpdater::update(const GroundStructure &design, GradientVector gradients, double g)
	{
		const Eigen::VectorXd d = design.design_vector();
		if (gradients.d_obj.size() != d.size() || gradients.d_vol.size() != d.size())
			throw Error("update_design: gradient length does not match the design");
		if (config_.freeze_thickness)
			for (int i = 0; i < design.num_components(); ++i)
			{
				gradients.d_obj(design.t_index(i)) = 0.0;
				gradients.d_vol(design.t_index(i)) = 0.0;
			}
		for (Eigen::Index j = 0; j < d.size(); ++j)
			if (lower_(j) == upper_(j))
			{
				gradients.d_obj(j) = 0.0;
				gradients.d_vol(j) = 0.0;
			}

		Eigen::VectorXd next;
		if (mma_)
		{
			next = mma_->update(d, gradients.d_obj, g, gradients.d_vol);
		}
		else
		{
			// projected gradient with bisection on the volume multiplier
			auto step = [&](double mu) {
				const Eigen::VectorXd dir = gradients.d_obj + mu * gradients.d_vol;
				const double scale = dir.cwiseAbs().maxCoeff();
				Eigen::VectorXd x = d;
				if (scale > 0.0)
					x = (d.array() - move_.array() * dir.array() / scale).matrix();
				return x.cwiseMax(lower_).cwiseMin(upper_).eval();
			};
			auto linearized = [&](const Eigen::VectorXd &x) { return g + gradients.d_vol.dot(x - d); };
			double mu = 0.0;
			next = step(0.0);
			if (linearized(next) > 0.0)
			{
				double lo = 0.0, hi = 1.0;
				while (linearized(step(hi)) > 0.0 && hi < 1e15)
					hi *= 4.0;
				for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it)
				{
					mu = 0.5 * (lo + hi);
					(linearized(step(mu)) > 0.0 ? lo : hi) = mu;
				}
				next = step(hi);
			}
		}

		// variables with no sensitivity stay bit-identical
		for (Eigen::Index j = 0; j < d.size(); ++j)
			if (gradients.d_obj(j) == 0.0 && gradients.d_vol(j) == 0.0)
				next(j) = d(j);

		const Eigen::ArrayXd range = (upper_ - lower_).array().max(1e-12);
		last_change_ = d.size() ? ((next - d).array().abs() / range).maxCoeff() : 0.0;
		GroundStructure out = design;
		out.set_design_vector(next);
		return out;
	}

	OptimizationHistory run_optimization(const GroundStructure &ground, const FeaModel &model, const OptimizationConfig &config)
	{
		config.validate();
		ground.validate();
		OptimizationHistory history;
		history.final_design = ground;

		FeaSolver<double> solver(model);
		DesignUpdater updater(ground, model.grid, config);
		GroundStructure design = ground;
		double f0 = 0.0;
		double change = 0.0;
		bool stop = false;
		for (int it = 0; it <= config.max_iters; ++it)
		{
			AnalysisResult analysis;
			try
			{
				analysis = analyze_design(design, solver, config.tdf);
			}
			catch (const Error &e)
			{
				history.error = e.what();
				break;
			}
			history.compliance.push_back(analysis.compliance);
			history.volume_fraction.push_back(analysis.volume_fraction);
			history.max_change.push_back(change);
			history.final_design = design;
			history.final_analysis = analysis;
			if (it == 0)
				f0 = analysis.compliance > 0 ? analysis.compliance : 1.0;
			if (stop || it == config.max_iters)
				break;

			GradientVector grad = full_gradient(design, analysis, model, config.tdf);
			grad.d_obj /= f0;
			design = updater.update(design, std::move(grad), analysis.volume_fraction - config.vbar);
			change = updater.last_change();
			if (config.tolerance > 0.0 && change < config.tolerance && analysis.volume_fraction <= config.vbar + 1e-3)
			{
				stop = true;
				history.converged = true;
			}
		}
		return history;
	}

	void write_history_csv(std::ostream &out, const OptimizationHistory &history)
	{
		out << "iteration,compliance,volume_fraction,max_change\n";
		out.precision(17);
		for (std::size_t k = 0; k < history.size(); ++k)
			out << k << ',' << history.compliance[k] << ',' << history.volume_fraction[k] << ',' << history.max_change[k] << '\n';
	}
} // namespace mmcgen
