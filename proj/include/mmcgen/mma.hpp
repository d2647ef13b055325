#pragma once

#include <Eigen/Core>

namespace mmcgen
{
	struct MmaSettings
	{
		double asy_init = 0.5;
		double asy_incr = 1.2;
		double asy_decr = 0.7;
		double albefa = 0.1;
		double raa0 = 1e-5;
	};

	/// Method of moving asymptotes for one inequality constraint,
	///
	///     min f(x)  s.t.  g(x) <= 0,  xmin <= x <= xmax,
	///
	/// with per-variable move limits. Each update builds the separable convex
	/// approximation around the current point and solves it through its
	/// one-dimensional dual by bisection on the multiplier.
	///
	/// A variable whose objective and constraint derivatives are both exactly zero,
	/// or whose bounds coincide, is returned unchanged.
	class Mma
	{
	public:
		Mma(Eigen::VectorXd xmin, Eigen::VectorXd xmax, Eigen::VectorXd move, MmaSettings settings = {});

		Eigen::VectorXd update(const Eigen::VectorXd &x, const Eigen::VectorXd &df, double g, const Eigen::VectorXd &dg);

		int iteration() const { return iter_; }
		/// Multiplier found in the last update.
		double multiplier() const { return lambda_; }

	private:
		Eigen::VectorXd xmin_, xmax_, move_;
		MmaSettings settings_;
		Eigen::VectorXd xold1_, xold2_, low_, upp_;
		int iter_ = 0;
		double lambda_ = 0.0;
	};
} // namespace mmcgen
