#include "mmcgen/fea.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace mmcgen
{
	double FeaModel::design_volume() const
	{
		if (!volume_excludes_nondesign || nondesign.empty())
			return grid.lx * grid.ly;
		const auto designable = std::count(nondesign.begin(), nondesign.end(), std::uint8_t{0});
		return static_cast<double>(designable) * grid.element_area();
	}

	Eigen::VectorXd FeaModel::load_vector() const
	{
		Eigen::VectorXd f = Eigen::VectorXd::Zero(grid.num_dofs());
		for (const auto &load : loads)
			f(2 * load.node + load.direction) += load.magnitude;
		return f;
	}

	void FeaModel::validate() const
	{
		if (fixed_dofs.empty())
			throw RigidBodyModeError();
		for (int dof : fixed_dofs)
			if (dof < 0 || dof >= grid.num_dofs())
				throw Error("fea: fixed dof out of range");
		for (const auto &load : loads)
			if (load.node < 0 || load.node >= grid.num_nodes() || load.direction < 0 || load.direction > 1)
				throw Error("fea: load outside the grid");
		if (!nondesign.empty() && static_cast<int>(nondesign.size()) != grid.num_elements())
			throw Error("fea: non-design mask size does not match the grid");
		if (!(heaviside.epsilon > 0.0) || !(heaviside.alpha > 0.0) || !(heaviside.alpha < 1.0))
			throw Error("fea: heaviside parameters must satisfy epsilon > 0, 0 < alpha < 1");
	}

	template <typename Scalar>
	Eigen::Matrix<Scalar, 8, 8> element_stiffness(double hx, double hy, const Material &material)
	{
		using std::sqrt;
		const Scalar E(material.youngs_modulus);
		const Scalar nu(material.poisson_ratio);
		Eigen::Matrix<Scalar, 3, 3> D;
		D << Scalar(1), nu, Scalar(0),
		    nu, Scalar(1), Scalar(0),
		    Scalar(0), Scalar(0), (Scalar(1) - nu) / Scalar(2);
		D *= E / (Scalar(1) - nu * nu);

		const Scalar xi_n[4] = {-1, 1, 1, -1};
		const Scalar eta_n[4] = {-1, -1, 1, 1};
		const Scalar g = Scalar(1) / sqrt(Scalar(3));
		const Scalar hxs(hx), hys(hy);
		const Scalar det_j = hxs * hys / Scalar(4);

		Eigen::Matrix<Scalar, 8, 8> k = Eigen::Matrix<Scalar, 8, 8>::Zero();
		for (Scalar xi : {-g, g})
			for (Scalar eta : {-g, g})
			{
				Eigen::Matrix<Scalar, 3, 8> B = Eigen::Matrix<Scalar, 3, 8>::Zero();
				for (int i = 0; i < 4; ++i)
				{
					const Scalar dndx = xi_n[i] * (Scalar(1) + eta * eta_n[i]) / Scalar(4) * Scalar(2) / hxs;
					const Scalar dndy = eta_n[i] * (Scalar(1) + xi * xi_n[i]) / Scalar(4) * Scalar(2) / hys;
					B(0, 2 * i) = dndx;
					B(1, 2 * i + 1) = dndy;
					B(2, 2 * i) = dndy;
					B(2, 2 * i + 1) = dndx;
				}
				k += B.transpose() * D * B * det_j;
			}
		// symmetric to the last bit
		return (k + k.transpose()) / Scalar(2);
	}

	template Eigen::Matrix<double, 8, 8> element_stiffness<double>(double, double, const Material &);
	template Eigen::Matrix<long double, 8, 8> element_stiffness<long double>(double, double, const Material &);

	template <typename Scalar>
	struct FeaSolver<Scalar>::Impl
	{
		using SpMat = Eigen::SparseMatrix<Scalar>;

		Eigen::Matrix<Scalar, 8, 8> ke;
		std::vector<int> free_index; // dof -> reduced index or -1
		int num_free = 0;
		SpMat K;
		// per element, per (a, b) local pair: position in K.valuePtr() or -1
		std::vector<int> value_slot;
		Eigen::SimplicialLLT<SpMat> llt;
		Field<Scalar> f_free;
		Field<Scalar> f_full;
	};

	namespace
	{
		Eigen::Matrix<int, 8, 1> element_dofs(const Grid &grid, int e)
		{
			const auto nodes = grid.element_nodes(e);
			Eigen::Matrix<int, 8, 1> dofs;
			for (int k = 0; k < 4; ++k)
			{
				dofs(2 * k) = 2 * nodes(k);
				dofs(2 * k + 1) = 2 * nodes(k) + 1;
			}
			return dofs;
		}
	} // namespace

	template <typename Scalar>
	FeaSolver<Scalar>::FeaSolver(const FeaModel &model) : model_(model), impl_(std::make_unique<Impl>())
	{
		model_.validate();
		const Grid &grid = model_.grid;
		auto &im = *impl_;
		im.ke = element_stiffness<Scalar>(grid.hx(), grid.hy(), model_.material);

		im.free_index.assign(grid.num_dofs(), 0);
		for (int dof : model_.fixed_dofs)
			im.free_index[dof] = -1;
		for (int dof = 0; dof < grid.num_dofs(); ++dof)
			if (im.free_index[dof] == 0)
				im.free_index[dof] = im.num_free++;
			else
				im.free_index[dof] = -1;
		if (im.num_free == 0)
			throw Error("fea: every dof is fixed");

		std::vector<Eigen::Triplet<Scalar>> triplets;
		triplets.reserve(static_cast<std::size_t>(grid.num_elements()) * 64);
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const auto dofs = element_dofs(grid, e);
			for (int a = 0; a < 8; ++a)
				for (int b = 0; b < 8; ++b)
				{
					const int ra = im.free_index[dofs(a)];
					const int rb = im.free_index[dofs(b)];
					if (ra >= 0 && rb >= 0)
						triplets.emplace_back(ra, rb, Scalar(1));
				}
		}
		im.K.resize(im.num_free, im.num_free);
		im.K.setFromTriplets(triplets.begin(), triplets.end());
		im.K.makeCompressed();

		im.value_slot.assign(static_cast<std::size_t>(grid.num_elements()) * 64, -1);
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const auto dofs = element_dofs(grid, e);
			for (int a = 0; a < 8; ++a)
				for (int b = 0; b < 8; ++b)
				{
					const int ra = im.free_index[dofs(a)];
					const int rb = im.free_index[dofs(b)];
					if (ra < 0 || rb < 0)
						continue;
					const auto *outer = im.K.outerIndexPtr();
					const auto *inner = im.K.innerIndexPtr();
					const auto *first = inner + outer[rb];
					const auto *last = inner + outer[rb + 1];
					const auto *it = std::lower_bound(first, last, ra);
					im.value_slot[static_cast<std::size_t>(e) * 64 + a * 8 + b] = static_cast<int>(it - inner);
				}
		}
		im.llt.analyzePattern(im.K);

		const Eigen::VectorXd f = model_.load_vector();
		im.f_full = f.cast<Scalar>();
		im.f_free.resize(im.num_free);
		for (int dof = 0; dof < grid.num_dofs(); ++dof)
			if (im.free_index[dof] >= 0)
				im.f_free(im.free_index[dof]) = Scalar(f(dof));
	}

	template <typename Scalar>
	FeaSolver<Scalar>::~FeaSolver() = default;
	template <typename Scalar>
	FeaSolver<Scalar>::FeaSolver(FeaSolver &&) noexcept = default;
	template <typename Scalar>
	FeaSolver<Scalar> &FeaSolver<Scalar>::operator=(FeaSolver &&) noexcept = default;

	template <typename Scalar>
	BasicAnalysisResult<Scalar> FeaSolver<Scalar>::solve(const Field<Scalar> &densities)
	{
		using std::abs;
		using std::max;
		const Grid &grid = model_.grid;
		if (densities.size() != grid.num_elements())
			throw Error("fea: density field size does not match the grid");
		auto &im = *impl_;
		const Scalar alpha(model_.heaviside.alpha);

		BasicAnalysisResult<Scalar> result;
		result.densities = densities;
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			if (model_.is_nondesign(e))
				result.densities(e) = alpha;
			else
				result.densities(e) = max(result.densities(e), alpha);
		}

		Scalar *values = im.K.valuePtr();
		std::fill(values, values + im.K.nonZeros(), Scalar(0));
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const Scalar rho = result.densities(e);
			const int *slots = &im.value_slot[static_cast<std::size_t>(e) * 64];
			for (int a = 0; a < 8; ++a)
				for (int b = 0; b < 8; ++b)
					if (const int s = slots[a * 8 + b]; s >= 0)
						values[s] += rho * im.ke(a, b);
		}

		im.llt.factorize(im.K);
		if (im.llt.info() != Eigen::Success)
			throw RigidBodyModeError();
		const Field<Scalar> u_free = im.llt.solve(im.f_free);

		const Scalar f_norm = im.f_free.norm();
		const Scalar residual = f_norm > Scalar(0) ? Scalar((im.K * u_free - im.f_free).norm() / f_norm) : Scalar(0);
		if (!(residual <= Scalar(1e-6)))
		{
			if (!std::isfinite(static_cast<double>(residual)))
				throw RigidBodyModeError();
			throw SolverError("fea: linear solve residual " + std::to_string(static_cast<double>(residual)) + " above tolerance",
			                  static_cast<double>(residual));
		}

		result.displacements = Field<Scalar>::Zero(grid.num_dofs());
		for (int dof = 0; dof < grid.num_dofs(); ++dof)
			if (im.free_index[dof] >= 0)
				result.displacements(dof) = u_free(im.free_index[dof]);
		result.compliance = im.f_full.dot(result.displacements);

		result.element_energy.resize(grid.num_elements());
		Scalar volume(0);
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const auto dofs = element_dofs(grid, e);
			Eigen::Matrix<Scalar, 8, 1> ue;
			for (int a = 0; a < 8; ++a)
				ue(a) = result.displacements(dofs(a));
			result.element_energy(e) = ue.dot(im.ke * ue);
			if (!model_.is_nondesign(e) || !model_.volume_excludes_nondesign)
				volume += result.densities(e);
		}
		result.volume_fraction = volume * Scalar(grid.element_area()) / Scalar(model_.design_volume());
		return result;
	}

	template class FeaSolver<double>;
	template class FeaSolver<long double>;

	AnalysisResult assemble_and_solve(const FeaModel &model, const ScalarField &densities)
	{
		FeaSolver<double> solver(model);
		return solver.solve(densities);
	}

	Eigen::SparseMatrix<double> global_stiffness(const FeaModel &model, const ScalarField &densities)
	{
		const Grid &grid = model.grid;
		const auto ke = element_stiffness<double>(grid.hx(), grid.hy(), model.material);
		std::vector<Eigen::Triplet<double>> triplets;
		for (int e = 0; e < grid.num_elements(); ++e)
		{
			const double rho = model.is_nondesign(e) ? model.heaviside.alpha : std::max(densities(e), model.heaviside.alpha);
			const auto dofs = element_dofs(grid, e);
			for (int a = 0; a < 8; ++a)
				for (int b = 0; b < 8; ++b)
					triplets.emplace_back(dofs(a), dofs(b), rho * ke(a, b));
		}
		Eigen::SparseMatrix<double> K(grid.num_dofs(), grid.num_dofs());
		K.setFromTriplets(triplets.begin(), triplets.end());
		return K;
	}

	double volume_fraction(const ScalarField &densities, const FeaModel &model)
	{
		double volume = 0.0;
		for (int e = 0; e < model.grid.num_elements(); ++e)
		{
			if (model.is_nondesign(e))
			{
				if (!model.volume_excludes_nondesign)
					volume += model.heaviside.alpha;
				continue;
			}
			volume += densities(e);
		}
		return volume * model.grid.element_area() / model.design_volume();
	}

	ScalarField apply_nondesign(ScalarField densities, const FeaModel &model)
	{
		if (!model.nondesign.empty())
			for (int e = 0; e < model.grid.num_elements(); ++e)
				if (model.nondesign[e])
					densities(e) = model.heaviside.alpha;
		return densities;
	}

	AnalysisResult reanalyze_image(const GrayImage &image, const FeaModel &model, double threshold)
	{
		const Grid &grid = model.grid;
		if (image.rows() % grid.ny != 0 || image.cols() % grid.nx != 0 || image.rows() < grid.ny || image.cols() < grid.nx)
			throw Error("reanalyze: image " + std::to_string(image.cols()) + "x" + std::to_string(image.rows()) +
			            " does not map onto the " + std::to_string(grid.nx) + "x" + std::to_string(grid.ny) + " grid");
		const GrayImage on_grid = block_average(image, grid.ny, grid.nx);
		const GrayImage binary = (on_grid > threshold).select(GrayImage::Ones(grid.ny, grid.nx), model.heaviside.alpha);
		return assemble_and_solve(model, from_raster(binary, grid));
	}
} // namespace mmcgen
