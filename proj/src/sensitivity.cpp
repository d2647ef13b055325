#include "mmcgen/sensitivity.hpp"

#include <cmath>

namespace mmcgen
{
	double dks_weight(std::span<const double> phi_all, int j, double lambda)
	{
		if (j < 0 || j >= static_cast<int>(phi_all.size()))
			throw Error("dks_weight: component index out of range");
		double m = phi_all[0];
		for (double v : phi_all)
			m = std::max(m, v);
		double sum = 0.0;
		for (double v : phi_all)
			sum += std::exp(lambda * (v - m));
		return std::exp(lambda * (phi_all[j] - m)) / sum;
	}

	bool tdf_gradient(const Component &c, const ComponentPose<double> &pose, double x, double y, int p,
	                  Eigen::Matrix<double, 5, 1> &grad)
	{
		grad.setZero();
		if (!(c.t > 0.0))
			return true;
		const double L = pose.half_length;
		const double cs = pose.cos_th;
		const double sn = pose.sin_th;
		const double u = x - pose.x0;
		const double v = y - pose.y0;
		const double xl = cs * u + sn * v;
		const double yl = -sn * u + cs * v;
		const double X = xl / L;
		const double Y = yl / c.t;
		const double Xp1 = detail::ipow(X, p - 1);
		const double Yp1 = detail::ipow(Y, p - 1);
		const double S = Xp1 * X + Yp1 * Y;
		if (!(S > 0.0))
			return false;
		// d(phi)/dX and d(phi)/dY of phi = 1 - S^(1/p)
		const double k = std::pow(S, 1.0 / p) / S;
		const double dphi_dX = -k * Xp1;
		const double dphi_dY = -k * Yp1;

		const double dx = c.xa - c.xb;
		const double dy = c.ya - c.yb;
		const double len = std::sqrt(dx * dx + dy * dy);
		const bool orientation_varies = len > 0.0;
		const bool length_varies = !pose.degenerate;

		// (dL, dx0, dy0, dcos, dsin) per endpoint coordinate
		struct Partials
		{
			double dL, dx0, dy0, dc, ds;
		};
		Partials P[4] = {
		    {cs / 2, 0.5, 0.0, sn * sn, -cs * sn},  // xa
		    {sn / 2, 0.0, 0.5, -cs * sn, cs * cs},  // ya
		    {-cs / 2, 0.5, 0.0, -sn * sn, cs * sn}, // xb
		    {-sn / 2, 0.0, 0.5, cs * sn, -cs * cs}, // yb
		};
		for (int q = 0; q < 4; ++q)
		{
			const double dL = length_varies ? P[q].dL : 0.0;
			const double dc = orientation_varies ? P[q].dc / len : 0.0;
			const double ds = orientation_varies ? P[q].ds / len : 0.0;
			const double du = -P[q].dx0;
			const double dv = -P[q].dy0;
			const double dxl = dc * u + ds * v + cs * du + sn * dv;
			const double dyl = -ds * u + dc * v - sn * du + cs * dv;
			const double dX = dxl / L - xl * dL / (L * L);
			const double dY = dyl / c.t;
			grad(q) = dphi_dX * dX + dphi_dY * dY;
		}
		grad(4) = dphi_dY * (-yl / (c.t * c.t));
		return true;
	}

	TdfDerivative dphi_dparam(const Component &c, double x, double y, ComponentParam which, const TdfParams &params)
	{
		Eigen::Matrix<double, 5, 1> grad;
		const auto pose = derive_pose(c, params.min_half_length);
		const bool ok = tdf_gradient(c, pose, x, y, params.p, grad);
		return {grad(static_cast<int>(which)), !ok};
	}

	AnalysisResult analyze_design(const GroundStructure &design, FeaSolver<double> &solver, const TdfParams &params)
	{
		auto result = analyze_design<double>(design, design.design_vector(), solver, params);
		result.design_hash = design.hash();
		return result;
	}

	GradientVector full_gradient(const GroundStructure &design, const AnalysisResult &analysis, const FeaModel &model,
	                             const TdfParams &params)
	{
		if (analysis.design_hash != design.hash())
			throw Error("stale analysis: design changed since it was analysed");
		const Grid &grid = model.grid;
		const auto comps = design.components();
		std::vector<int> active;
		const Eigen::MatrixXd phi = component_fields(std::span<const Component>(comps), grid, params, &active);
		const ScalarField phi_s = ks_aggregate(phi, params.ks_lambda);

		// Nodal factors: sum over incident elements of (df/drho_e, dg/drho_e) / 4.
		Eigen::VectorXd node_obj = Eigen::VectorXd::Zero(grid.num_nodes());
		Eigen::VectorXd node_vol = Eigen::VectorXd::Zero(grid.num_nodes());
		const double dvol = grid.element_area() / model.design_volume();
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			if (model.is_nondesign(e))
				continue;
			const auto nodes = grid.element_nodes(e);
			for (int k = 0; k < 4; ++k)
			{
				node_obj(nodes(k)) -= analysis.element_energy(e) / 4.0;
				node_vol(nodes(k)) += dvol / 4.0;
			}
		}

		GradientVector g;
		g.d_obj = Eigen::VectorXd::Zero(design.num_variables());
		g.d_vol = Eigen::VectorXd::Zero(design.num_variables());
		if (active.empty())
			return g;

		std::vector<ComponentPose<double>> poses;
		for (int idx : active)
			poses.push_back(derive_pose(comps[idx], params.min_half_length));

		// per active component: 5 accumulated partials for objective and volume
		Eigen::Matrix<double, 5, Eigen::Dynamic> acc_obj = Eigen::Matrix<double, 5, Eigen::Dynamic>::Zero(5, active.size());
		Eigen::Matrix<double, 5, Eigen::Dynamic> acc_vol = Eigen::Matrix<double, 5, Eigen::Dynamic>::Zero(5, active.size());
		Eigen::Matrix<double, 5, 1> dphi;
		const double lambda = params.ks_lambda;
		for (int n = 0; n < grid.num_nodes(); ++n)
		{
			const double hprime = heaviside_derivative(phi_s(n), model.heaviside);
			if (hprime == 0.0)
				continue;
			const double m = phi.row(n).maxCoeff();
			double sum = 0.0;
			for (Eigen::Index j = 0; j < phi.cols(); ++j)
				sum += std::exp(lambda * (phi(n, j) - m));
			const double x = grid.node_x(n);
			const double y = grid.node_y(n);
			for (Eigen::Index j = 0; j < phi.cols(); ++j)
			{
				const double w = std::exp(lambda * (phi(n, j) - m)) / sum;
				if (w == 0.0)
					continue;
				tdf_gradient(comps[active[j]], poses[j], x, y, params.p, dphi);
				acc_obj.col(j) += (node_obj(n) * hprime * w) * dphi;
				acc_vol.col(j) += (node_vol(n) * hprime * w) * dphi;
			}
		}

		for (std::size_t j = 0; j < active.size(); ++j)
		{
			const int comp = active[j];
			const auto [a, b] = design.edges[comp];
			const int idx[5] = {design.x_index(a), design.y_index(a), design.x_index(b), design.y_index(b), design.t_index(comp)};
			for (int q = 0; q < 5; ++q)
			{
				g.d_obj(idx[q]) += acc_obj(q, j);
				g.d_vol(idx[q]) += acc_vol(q, j);
			}
		}
		return g;
	}
} // namespace mmcgen
