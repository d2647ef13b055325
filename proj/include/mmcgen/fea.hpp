#pragma once

#include "mmcgen/grid.hpp"
#include "mmcgen/heaviside.hpp"
#include "mmcgen/raster.hpp"

#include <Eigen/Core>
#include <Eigen/Sparse>

#include <cstdint>
#include <memory>
#include <vector>

namespace mmcgen
{
	/// Raised when supports do not remove all rigid-body modes.
	class RigidBodyModeError : public Error
	{
	public:
		RigidBodyModeError() : Error("rigid body mode") {}
	};

	/// Raised when the linear solve does not reach the residual tolerance.
	class SolverError : public Error
	{
	public:
		SolverError(const std::string &what, double residual_) : Error(what), residual(residual_) {}
		double residual;
	};

	struct Material
	{
		double youngs_modulus = 1.0;
		double poisson_ratio = 0.3;
	};

	struct NodalLoad
	{
		int node = 0;
		int direction = 1; ///< 0 = x, 1 = y
		double magnitude = 0.0;
	};

	/// Plane-stress model on a fixed grid.
	struct FeaModel
	{
		Grid grid;
		Material material;
		HeavisideParams heaviside;
		std::vector<int> fixed_dofs;
		std::vector<NodalLoad> loads;
		/// Optional per-element flag (size nx*ny); flagged elements are forced void.
		std::vector<std::uint8_t> nondesign;
		/// When set, |D| and V exclude non-design elements.
		bool volume_excludes_nondesign = true;

		bool is_nondesign(int e) const { return !nondesign.empty() && nondesign[e] != 0; }
		/// Volume of the designable region (the |D| in V/|D|).
		double design_volume() const;
		Eigen::VectorXd load_vector() const;
		void validate() const;
	};

	template <typename Scalar>
	struct BasicAnalysisResult
	{
		Field<Scalar> displacements;
		Scalar compliance{0};
		Field<Scalar> densities;
		Scalar volume_fraction{0};
		/// u_e^T k_e^0 u_e per element.
		Field<Scalar> element_energy;
		/// GroundStructure::hash() of the analysed design, 0 when not from a design.
		std::uint64_t design_hash = 0;
	};

	using AnalysisResult = BasicAnalysisResult<double>;

	/// 8x8 bilinear plane-stress stiffness of one hx x hy element of unit thickness,
	/// 2x2 Gauss quadrature, dof order (u1, v1, ..., u4, v4) counter-clockwise from
	/// the bottom-left node.
	template <typename Scalar>
	Eigen::Matrix<Scalar, 8, 8> element_stiffness(double hx, double hy, const Material &material);

	/// Assembles K = sum rho_e k_e^0 on the free dofs and solves K U = F with a
	/// sparse Cholesky factorization. The sparsity pattern and ordering are computed
	/// once per solver and reused across solves.
	template <typename Scalar>
	class FeaSolver
	{
	public:
		explicit FeaSolver(const FeaModel &model);
		~FeaSolver();
		FeaSolver(FeaSolver &&) noexcept;
		FeaSolver &operator=(FeaSolver &&) noexcept;

		/// Densities below alpha are raised to alpha; non-design elements are set to alpha.
		BasicAnalysisResult<Scalar> solve(const Field<Scalar> &densities);

		const FeaModel &model() const { return model_; }

	private:
		struct Impl;
		FeaModel model_;
		std::unique_ptr<Impl> impl_;
	};

	extern template class FeaSolver<double>;
	extern template class FeaSolver<long double>;

	AnalysisResult assemble_and_solve(const FeaModel &model, const ScalarField &densities);

	/// Full (unreduced) global stiffness matrix, for inspection.
	Eigen::SparseMatrix<double> global_stiffness(const FeaModel &model, const ScalarField &densities);

	/// sum rho_e V_e / |D| over designable elements.
	double volume_fraction(const ScalarField &densities, const FeaModel &model);

	/// Densities forced to alpha inside the non-design mask.
	ScalarField apply_nondesign(ScalarField densities, const FeaModel &model);

	/// Thresholds a grayscale raster to {alpha, 1} and analyses it. The raster must be
	/// ny x nx or an integer multiple of it (block-averaged first).
	AnalysisResult reanalyze_image(const GrayImage &image, const FeaModel &model, double threshold);
} // namespace mmcgen
