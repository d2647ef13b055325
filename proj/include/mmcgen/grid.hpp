#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmcgen
{
	/// Base class for all errors raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// Rectangular design domain [0, lx] x [0, ly] split into nx x ny
	/// square-or-rectangular bilinear elements.
	///
	/// Nodes are numbered row by row from the bottom-left corner,
	/// node(i, j) = j * (nx + 1) + i. Elements use the same ordering,
	/// element(i, j) = j * nx + i.
	struct Grid
	{
		int nx = 0;
		int ny = 0;
		double lx = 0.0;
		double ly = 0.0;

		Grid() = default;
		Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_)
		{
			if (nx < 1 || ny < 1 || !(lx > 0.0) || !(ly > 0.0))
				throw Error("grid: element counts and dimensions must be positive");
		}

		int num_nodes() const { return (nx + 1) * (ny + 1); }
		int num_elements() const { return nx * ny; }
		int num_dofs() const { return 2 * num_nodes(); }

		double hx() const { return lx / nx; }
		double hy() const { return ly / ny; }
		double element_area() const { return hx() * hy(); }

		int node(int i, int j) const { return j * (nx + 1) + i; }
		int element(int i, int j) const { return j * nx + i; }

		double node_x(int n) const { return (n % (nx + 1)) * hx(); }
		double node_y(int n) const { return (n / (nx + 1)) * hy(); }

		/// Counter-clockwise node indices of element e: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
		Eigen::Vector4i element_nodes(int e) const
		{
			const int i = e % nx;
			const int j = e / nx;
			return {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
		}

		bool operator==(const Grid &) const = default;
	};

	/// Nodal or elemental scalar values on a Grid.
	template <typename Scalar>
	using Field = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

	using ScalarField = Field<double>;
} // namespace mmcgen
