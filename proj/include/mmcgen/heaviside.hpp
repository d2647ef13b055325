#pragma once

#include <Eigen/Core>

namespace mmcgen
{
	/// Regularized Heaviside parameters: transition half-width and void stiffness floor.
	struct HeavisideParams
	{
		double epsilon = 0.1;
		double alpha = 1e-3;
	};

	/// Cubic-regularized step: alpha below -epsilon, 1 above +epsilon, C1 in between.
	template <typename Scalar>
	Scalar heaviside(Scalar x, const HeavisideParams &params)
	{
		const Scalar eps(params.epsilon);
		const Scalar alpha(params.alpha);
		if (x > eps)
			return Scalar(1);
		if (x < -eps)
			return alpha;
		const Scalar r = x / eps;
		return Scalar(3) * (Scalar(1) - alpha) / Scalar(4) * (r - r * r * r / Scalar(3)) + (Scalar(1) + alpha) / Scalar(2);
	}

	/// dH/dx; zero outside [-epsilon, epsilon].
	template <typename Scalar>
	Scalar heaviside_derivative(Scalar x, const HeavisideParams &params)
	{
		const Scalar eps(params.epsilon);
		if (x > eps || x < -eps)
			return Scalar(0);
		const Scalar r = x / eps;
		return Scalar(3) * (Scalar(1) - Scalar(params.alpha)) / (Scalar(4) * eps) * (Scalar(1) - r * r);
	}

	/// Ersatz density of one element from the structure TDF at its four nodes.
	template <typename Scalar>
	Scalar element_density(const Eigen::Matrix<Scalar, 4, 1> &phi_nodal, const HeavisideParams &params)
	{
		Scalar sum(0);
		for (int k = 0; k < 4; ++k)
			sum += heaviside(phi_nodal(k), params);
		return sum / Scalar(4);
	}
} // namespace mmcgen
