#pragma once

#include "mmcgen/fea.hpp"
#include "mmcgen/geometry.hpp"
#include "mmcgen/topology.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace mmcgen
{
	struct Segment
	{
		Eigen::Vector2d from = Eigen::Vector2d::Zero();
		Eigen::Vector2d to = Eigen::Vector2d::Zero();

		bool vertical() const { return from.x() == to.x(); }
		bool horizontal() const { return from.y() == to.y(); }
		bool contains(const Eigen::Vector2d &p, double tol) const;
	};

	/// Axis-aligned rectangle [x0, x1] x [y0, y1].
	struct Rect
	{
		double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

		bool contains(double x, double y) const { return x > x0 && x < x1 && y > y0 && y < y1; }
		/// True when the open interiors intersect.
		bool overlaps(const Rect &o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
	};

	/// What the initial-design strategies need to know about the problem.
	struct DesignDomain
	{
		double lx = 2.0;
		double ly = 1.0;
		std::vector<Rect> voids;
		std::vector<Segment> supports;
		std::vector<Eigen::Vector2d> load_points;
	};

	/// A loading/support configuration with an enumerated set of load positions.
	///
	/// Load label k (0-based, of num_labels) sits at from + k/(num_labels-1) (to - from)
	/// along `load_line`. Positions between grid nodes are split linearly onto the
	/// two neighbouring nodes.
	struct ProblemSpec
	{
		std::string id = "cantilever";
		Grid grid{200, 100, 2.0, 1.0};
		Material material;
		HeavisideParams heaviside;
		TdfParams tdf;
		/// Every grid node on a support segment is clamped in x and y.
		std::vector<Segment> supports;
		Segment load_line;
		int num_labels = 101;
		Eigen::Vector2d load = {0.0, -1.0};
		std::vector<Rect> voids;
		double vbar = 0.35;
		ComplexityBinning binning = ComplexityBinning::cantilever();
		bool volume_excludes_nondesign = true;

		void validate() const;

		Eigen::Vector2d load_point(int label) const;
		FeaModel fea_model(int label) const;
		DesignDomain domain(int label) const;
		std::vector<std::uint8_t> nondesign_mask() const;

		/// Left edge clamped, unit downward load on the right edge; default 200x100 on 2x1.
		static ProblemSpec cantilever(int nx = 200, int ny = 100, int num_labels = 101);
		/// Unit square with a void upper-right block (0.6 of each side), top edge of
		/// the remaining arm clamped, loads along the lower right edge.
		static ProblemSpec lbeam(int n = 200, int num_labels = 81);
	};

	/// Components narrower than one element are eliminated: half the smaller element side.
	double default_min_thickness(const Grid &grid);

	/// JSON (see docs/config.md). Unknown problem ids throw.
	ProblemSpec parse_problem(const std::string &json_text);
	std::string serialize(const ProblemSpec &spec);
} // namespace mmcgen
