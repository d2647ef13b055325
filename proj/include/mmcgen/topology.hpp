#pragma once

#include "mmcgen/raster.hpp"

#include <vector>

namespace mmcgen
{
	/// Neighbourhood counts from scanning every 2x2 window of the void-padded image.
	struct EulerCounts
	{
		/// (a1 - a3) / 4; exact for 4-connected solid when diagonal == 0.
		int euler = 0;
		int a1 = 0;
		int a3 = 0;
		/// 2x2 windows whose two solid pixels touch only at a corner.
		int diagonal = 0;
	};

	/// Genus-to-level map. Level k (1-based) covers genus up to upper_bounds[k-1];
	/// the last level is open-ended.
	struct ComplexityBinning
	{
		std::vector<int> upper_bounds;

		int num_levels() const { return static_cast<int>(upper_bounds.size()) + 1; }
		void validate() const;

		/// Six levels: 0-5, 6-10, 11-15, 16-20, 21-24, 25+.
		static ComplexityBinning cantilever();
		/// Three levels: 0-6, 7-12, 13+.
		static ComplexityBinning lbeam();
	};

	struct TopologySummary
	{
		int euler = 0;
		int betti0 = 0;
		int genus = 0;
		int diagonal_nodes = 0;
		int complexity_level = 0;
		/// Genus came from void-phase hole counting because diagonal nodes were present
		/// and the neighbourhood formula disagreed.
		bool fallback = false;
	};

	EulerCounts euler_number(const BinaryImage &img);

	/// Number of 4-connected solid components.
	int betti0(const BinaryImage &img);

	/// Number of 8-connected void regions not connected to the image border.
	int count_holes(const BinaryImage &img);

	int complexity_level(int genus, const ComplexityBinning &binning);

	/// Euler number, Betti numbers and complexity level. Solid is 4-connected and void
	/// 8-connected; the genus is B0 - E, recomputed by hole counting when diagonal
	/// nodes are present.
	TopologySummary topology_summary(const BinaryImage &img, const ComplexityBinning &binning = ComplexityBinning::cantilever());

	inline int genus(const BinaryImage &img) { return topology_summary(img).genus; }

	/// Measure of non-discreteness in percent: mean of 4 rho (1 - rho) times 100.
	double m_nd(const GrayImage &img);
} // namespace mmcgen
