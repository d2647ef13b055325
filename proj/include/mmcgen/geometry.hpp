#pragma once

#include "mmcgen/grid.hpp"
#include "mmcgen/heaviside.hpp"
#include "mmcgen/raster.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace mmcgen
{
	/// One straight member of uniform width: endpoints a, b and half-width t.
	template <typename Scalar>
	struct ComponentGeom
	{
		Scalar xa{0}, ya{0}, xb{0}, yb{0};
		Scalar t{0};
	};

	using Component = ComponentGeom<double>;

	/// Half-length, center and orientation derived from the endpoints.
	template <typename Scalar>
	struct ComponentPose
	{
		Scalar half_length{1};
		Scalar x0{0}, y0{0};
		Scalar sin_th{0}, cos_th{1};
		bool degenerate = false;
	};

	struct TdfParams
	{
		/// Super-ellipse exponent, even and >= 2.
		int p = 6;
		/// K-S aggregation sharpness.
		double ks_lambda = 80.0;
		/// Half-lengths below this are clamped (usually 1e-4 * max(lx, ly)).
		double min_half_length = 2e-4;
		/// Components thinner than this are dropped from the structure.
		double min_thickness = 1e-6;

		void validate() const;
	};

	/// Value returned by tdf_component for a component with t <= 0.
	inline constexpr double kEliminatedTdf = -std::numeric_limits<double>::infinity();

	namespace detail
	{
		template <typename Scalar>
		Scalar ipow(Scalar x, int p)
		{
			Scalar r(1);
			for (int k = 0; k < p; ++k)
				r *= x;
			return r;
		}
	} // namespace detail

	template <typename Scalar>
	ComponentPose<Scalar> derive_pose(const ComponentGeom<Scalar> &c, double min_half_length = 0.0)
	{
		using std::sqrt;
		ComponentPose<Scalar> pose;
		const Scalar dx = c.xa - c.xb;
		const Scalar dy = c.ya - c.yb;
		const Scalar length = sqrt(dx * dx + dy * dy);
		pose.x0 = (c.xa + c.xb) / Scalar(2);
		pose.y0 = (c.ya + c.yb) / Scalar(2);
		pose.half_length = length / Scalar(2);
		if (length > Scalar(0))
		{
			pose.sin_th = dy / length;
			pose.cos_th = dx / length;
		}
		else
		{
			pose.sin_th = Scalar(0);
			pose.cos_th = Scalar(1);
		}
		if (pose.half_length < Scalar(min_half_length) || !(length > Scalar(0)))
		{
			pose.half_length = Scalar(std::max(min_half_length, 1e-300));
			pose.degenerate = true;
		}
		return pose;
	}

	/// Local frame coordinates (x', y') of a point relative to a component pose.
	template <typename Scalar>
	Eigen::Matrix<Scalar, 2, 1> to_local(const ComponentPose<Scalar> &pose, Scalar x, Scalar y)
	{
		const Scalar u = x - pose.x0;
		const Scalar v = y - pose.y0;
		return {pose.cos_th * u + pose.sin_th * v, -pose.sin_th * u + pose.cos_th * v};
	}

	/// Super-ellipse TDF of one component at (x, y): positive inside, zero on the
	/// boundary, negative outside. Returns kEliminatedTdf when t <= 0.
	template <typename Scalar>
	Scalar tdf_component(const ComponentPose<Scalar> &pose, Scalar t, Scalar x, Scalar y, int p)
	{
		using std::pow;
		if (!(t > Scalar(0)))
			return Scalar(kEliminatedTdf);
		const auto local = to_local(pose, x, y);
		const Scalar s = detail::ipow(local(0) / pose.half_length, p) + detail::ipow(local(1) / t, p);
		return Scalar(1) - pow(s, Scalar(1) / Scalar(p));
	}

	template <typename Scalar>
	Scalar tdf_component(const ComponentGeom<Scalar> &c, Scalar x, Scalar y, const TdfParams &params)
	{
		return tdf_component(derive_pose(c, params.min_half_length), c.t, x, y, params.p);
	}

	/// Per-component nodal TDF values, one column per component that survives the
	/// thickness cutoff. `active` receives the original component index of each column.
	template <typename Scalar>
	Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> component_fields(std::span<const ComponentGeom<Scalar>> components,
	                                                                       const Grid &grid, const TdfParams &params,
	                                                                       std::vector<int> *active = nullptr)
	{
		std::vector<int> kept;
		for (int i = 0; i < static_cast<int>(components.size()); ++i)
			if (components[i].t >= Scalar(params.min_thickness))
				kept.push_back(i);

		Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> phi(grid.num_nodes(), static_cast<Eigen::Index>(kept.size()));
		for (int col = 0; col < static_cast<int>(kept.size()); ++col)
		{
			const auto &c = components[kept[col]];
			const auto pose = derive_pose(c, params.min_half_length);
			for (int n = 0; n < grid.num_nodes(); ++n)
				phi(n, col) = tdf_component(pose, c.t, Scalar(grid.node_x(n)), Scalar(grid.node_y(n)), params.p);
		}
		if (active)
			*active = std::move(kept);
		return phi;
	}

	/// Row-wise K-S aggregate of component fields with max-subtraction.
	/// A row with no columns evaluates to kEliminatedTdf.
	template <typename Derived>
	Field<typename Derived::Scalar> ks_aggregate(const Eigen::MatrixBase<Derived> &phi, double lambda)
	{
		using Scalar = typename Derived::Scalar;
		using std::exp;
		using std::log;
		Field<Scalar> out(phi.rows());
		if (phi.cols() == 0)
		{
			out.setConstant(Scalar(kEliminatedTdf));
			return out;
		}
		const Scalar lam(lambda);
		for (Eigen::Index n = 0; n < phi.rows(); ++n)
		{
			const Scalar m = phi.row(n).maxCoeff();
			Scalar sum(0);
			for (Eigen::Index j = 0; j < phi.cols(); ++j)
				sum += exp(lam * (phi(n, j) - m));
			out(n) = m + log(sum) / lam;
		}
		return out;
	}

	/// Nodal structure TDF: K-S smoothed maximum of the component TDFs.
	/// Throws on an empty component list.
	template <typename Scalar>
	Field<Scalar> tdf_structure(std::span<const ComponentGeom<Scalar>> components, const Grid &grid, const TdfParams &params)
	{
		if (components.empty())
			throw Error("empty structure");
		return ks_aggregate(component_fields(components, grid, params), params.ks_lambda);
	}

	/// Exact pointwise maximum of the component TDFs (reference for the K-S field).
	template <typename Scalar>
	Field<Scalar> tdf_exact_max(std::span<const ComponentGeom<Scalar>> components, const Grid &grid, const TdfParams &params)
	{
		if (components.empty())
			throw Error("empty structure");
		const auto phi = component_fields(components, grid, params);
		if (phi.cols() == 0)
			return Field<Scalar>::Constant(grid.num_nodes(), Scalar(kEliminatedTdf));
		return phi.rowwise().maxCoeff();
	}

	/// Elemental ersatz densities from a nodal structure TDF.
	template <typename Scalar>
	Field<Scalar> element_densities(const Field<Scalar> &phi_nodal, const Grid &grid, const HeavisideParams &params)
	{
		Field<Scalar> rho(grid.num_elements());
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const auto nodes = grid.element_nodes(e);
			Eigen::Matrix<Scalar, 4, 1> phi_e;
			for (int k = 0; k < 4; ++k)
				phi_e(k) = phi_nodal(nodes(k));
			rho(e) = element_density(phi_e, params);
		}
		return rho;
	}

	/// Pixel = 1 where the elemental density exceeds `threshold`.
	BinaryImage binarize_structure(const ScalarField &phi_nodal, const Grid &grid, const HeavisideParams &params,
	                               double threshold = 0.5);
} // namespace mmcgen
