#include "mmcgen/mma.hpp"

#include "mmcgen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mmcgen
{
	Mma::Mma(Eigen::VectorXd xmin, Eigen::VectorXd xmax, Eigen::VectorXd move, MmaSettings settings)
	    : xmin_(std::move(xmin)), xmax_(std::move(xmax)), move_(std::move(move)), settings_(settings)
	{
		if (xmin_.size() != xmax_.size() || xmin_.size() != move_.size())
			throw Error("mma: bound and move-limit sizes differ");
		if ((xmax_.array() < xmin_.array()).any())
			throw Error("mma: xmax below xmin");
		if ((move_.array() <= 0.0).any())
			throw Error("mma: move limits must be positive");
	}

	Eigen::VectorXd Mma::update(const Eigen::VectorXd &x, const Eigen::VectorXd &df, double g, const Eigen::VectorXd &dg)
	{
		const Eigen::Index n = x.size();
		if (df.size() != n || dg.size() != n || xmin_.size() != n)
			throw Error("mma: vector sizes differ");

		const Eigen::ArrayXd range = (xmax_ - xmin_).array().max(1e-5);
		if (iter_ < 2)
		{
			low_ = x.array() - settings_.asy_init * range;
			upp_ = x.array() + settings_.asy_init * range;
		}
		else
		{
			for (Eigen::Index j = 0; j < n; ++j)
			{
				const double trend = (x(j) - xold1_(j)) * (xold1_(j) - xold2_(j));
				const double factor = trend > 0 ? settings_.asy_incr : (trend < 0 ? settings_.asy_decr : 1.0);
				low_(j) = x(j) - factor * (xold1_(j) - low_(j));
				upp_(j) = x(j) + factor * (upp_(j) - xold1_(j));
				low_(j) = std::clamp(low_(j), x(j) - 10.0 * range(j), x(j) - 0.01 * range(j));
				upp_(j) = std::clamp(upp_(j), x(j) + 0.01 * range(j), x(j) + 10.0 * range(j));
			}
		}

		std::vector<Eigen::Index> free;
		for (Eigen::Index j = 0; j < n; ++j)
			if (xmax_(j) > xmin_(j) && (df(j) != 0.0 || dg(j) != 0.0))
				free.push_back(j);

		Eigen::ArrayXd alpha(n), beta(n), p0(n), q0(n), p1(n), q1(n);
		double base = 0.0;
		for (Eigen::Index j : free)
		{
			alpha(j) = std::max({xmin_(j), low_(j) + settings_.albefa * (x(j) - low_(j)), x(j) - move_(j)});
			beta(j) = std::min({xmax_(j), upp_(j) - settings_.albefa * (upp_(j) - x(j)), x(j) + move_(j)});
			const double ux = upp_(j) - x(j);
			const double xl = x(j) - low_(j);
			const double reg = settings_.raa0 / range(j);
			p0(j) = ux * ux * (1.001 * std::max(df(j), 0.0) + 0.001 * std::max(-df(j), 0.0) + reg);
			q0(j) = xl * xl * (0.001 * std::max(df(j), 0.0) + 1.001 * std::max(-df(j), 0.0) + reg);
			p1(j) = ux * ux * (1.001 * std::max(dg(j), 0.0) + 0.001 * std::max(-dg(j), 0.0) + reg);
			q1(j) = xl * xl * (0.001 * std::max(dg(j), 0.0) + 1.001 * std::max(-dg(j), 0.0) + reg);
			base += p1(j) / ux + q1(j) / xl;
		}

		Eigen::VectorXd xnew = x;
		auto primal = [&](double lambda) {
			for (Eigen::Index j : free)
			{
				const double P = std::sqrt(p0(j) + lambda * p1(j));
				const double Q = std::sqrt(q0(j) + lambda * q1(j));
				xnew(j) = std::clamp((P * low_(j) + Q * upp_(j)) / (P + Q), alpha(j), beta(j));
			}
		};
		auto constraint = [&]() {
			double s = 0.0;
			for (Eigen::Index j : free)
				s += p1(j) / (upp_(j) - xnew(j)) + q1(j) / (xnew(j) - low_(j));
			return s - base + g;
		};

		double lambda = 0.0;
		primal(0.0);
		if (!free.empty() && constraint() > 0.0)
		{
			double lo = 0.0, hi = 1.0;
			primal(hi);
			while (constraint() > 0.0 && hi < 1e15)
			{
				lo = hi;
				hi *= 4.0;
				primal(hi);
			}
			for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it)
			{
				const double mid = 0.5 * (lo + hi);
				primal(mid);
				if (constraint() > 0.0)
					lo = mid;
				else
					hi = mid;
			}
			lambda = hi;
			primal(lambda);
		}
		lambda_ = lambda;

		xold2_ = iter_ == 0 ? x : xold1_;
		xold1_ = x;
		++iter_;
		return xnew;
	}
} // namespace mmcgen
