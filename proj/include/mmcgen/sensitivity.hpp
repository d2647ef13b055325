#pragma once

#include "mmcgen/fea.hpp"
#include "mmcgen/geometry.hpp"
#include "mmcgen/ground_structure.hpp"

#include <Eigen/Core>

#include <span>

namespace mmcgen
{
	enum class ComponentParam
	{
		xa,
		ya,
		xb,
		yb,
		t
	};

	struct TdfDerivative
	{
		double value = 0.0;
		/// Set at the super-ellipse center, where the TDF has a cone point.
		bool degenerate = false;
	};

	/// Gradients of compliance (d_obj) and of the volume constraint (d_vol) with
	/// respect to the design vector (d_x, d_y, d_t).
	struct GradientVector
	{
		Eigen::VectorXd d_obj;
		Eigen::VectorXd d_vol;
	};

	/// K-S partial d(phi^s)/d(phi^j) at one point: softmax weight of component j.
	double dks_weight(std::span<const double> phi_all, int j, double lambda);

	/// All five partials (xa, ya, xb, yb, t) of a component TDF at (x, y).
	/// Returns false and zeros at the cone point x' = y' = 0.
	bool tdf_gradient(const Component &c, const ComponentPose<double> &pose, double x, double y, int p,
	                  Eigen::Matrix<double, 5, 1> &grad);

	TdfDerivative dphi_dparam(const Component &c, double x, double y, ComponentParam which, const TdfParams &params);

	/// Runs TDF -> densities -> FEA for a design vector and tags the result with the
	/// structure hash when `d` is the design's own vector.
	template <typename Scalar>
	BasicAnalysisResult<Scalar> analyze_design(const GroundStructure &design, const Field<Scalar> &d, FeaSolver<Scalar> &solver,
	                                           const TdfParams &params)
	{
		const Grid &grid = solver.model().grid;
		const auto comps = design.components<Scalar>(d);
		const auto phi_s = ks_aggregate(component_fields(std::span<const ComponentGeom<Scalar>>(comps), grid, params),
		                                params.ks_lambda);
		return solver.solve(element_densities(phi_s, grid, solver.model().heaviside));
	}

	AnalysisResult analyze_design(const GroundStructure &design, FeaSolver<double> &solver, const TdfParams &params);

	/// Adjoint-free compliance and volume gradients for the analysed design.
	/// Throws if `analysis` was computed for a different design.
	GradientVector full_gradient(const GroundStructure &design, const AnalysisResult &analysis, const FeaModel &model,
	                             const TdfParams &params);
} // namespace mmcgen
