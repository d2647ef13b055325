#include "mmcgen/topology.hpp"

#include "mmcgen/grid.hpp"

#include <array>
#include <vector>

namespace mmcgen
{
	namespace
	{
		BinaryImage padded(const BinaryImage &img)
		{
			BinaryImage out = BinaryImage::Zero(img.rows() + 2, img.cols() + 2);
			out.block(1, 1, img.rows(), img.cols()) = (img != 0).cast<std::uint8_t>();
			return out;
		}

		/// Labels connected regions of pixels equal to `phase`; returns the region count.
		int label_regions(const BinaryImage &img, std::uint8_t phase, bool eight_connected, Eigen::ArrayXXi &labels)
		{
			const Eigen::Index rows = img.rows();
			const Eigen::Index cols = img.cols();
			labels = Eigen::ArrayXXi::Constant(rows, cols, -1);
			static constexpr std::array<std::array<int, 2>, 8> offsets{
			    {{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};
			const int num_offsets = eight_connected ? 8 : 4;
			int count = 0;
			std::vector<std::array<Eigen::Index, 2>> stack;
			for (Eigen::Index r0 = 0; r0 < rows; ++r0)
				for (Eigen::Index c0 = 0; c0 < cols; ++c0)
				{
					if (img(r0, c0) != phase || labels(r0, c0) >= 0)
						continue;
					labels(r0, c0) = count;
					stack.push_back({r0, c0});
					while (!stack.empty())
					{
						const auto [r, c] = stack.back();
						stack.pop_back();
						for (int k = 0; k < num_offsets; ++k)
						{
							const Eigen::Index rr = r + offsets[k][0];
							const Eigen::Index cc = c + offsets[k][1];
							if (rr < 0 || cc < 0 || rr >= rows || cc >= cols)
								continue;
							if (img(rr, cc) != phase || labels(rr, cc) >= 0)
								continue;
							labels(rr, cc) = count;
							stack.push_back({rr, cc});
						}
					}
					++count;
				}
			return count;
		}
	} // namespace

	void ComplexityBinning::validate() const
	{
		for (std::size_t k = 0; k < upper_bounds.size(); ++k)
		{
			if (upper_bounds[k] < 0)
				throw Error("binning: bounds must be non-negative");
			if (k > 0 && upper_bounds[k] <= upper_bounds[k - 1])
				throw Error("binning: bounds must be strictly increasing");
		}
	}

	ComplexityBinning ComplexityBinning::cantilever() { return {{5, 10, 15, 20, 24}}; }
	ComplexityBinning ComplexityBinning::lbeam() { return {{6, 12}}; }

	EulerCounts euler_number(const BinaryImage &img)
	{
		const BinaryImage p = padded(img);
		EulerCounts counts;
		for (Eigen::Index r = 0; r + 1 < p.rows(); ++r)
			for (Eigen::Index c = 0; c + 1 < p.cols(); ++c)
			{
				const int tl = p(r, c), tr = p(r, c + 1), bl = p(r + 1, c), br = p(r + 1, c + 1);
				const int q = tl + tr + bl + br;
				if (q == 1)
					++counts.a1;
				else if (q == 3)
					++counts.a3;
				else if (q == 2 && tl == br)
					++counts.diagonal;
			}
		counts.euler = (counts.a1 - counts.a3) / 4;
		return counts;
	}

	int betti0(const BinaryImage &img)
	{
		Eigen::ArrayXXi labels;
		return label_regions((img != 0).cast<std::uint8_t>(), 1, false, labels);
	}

	int count_holes(const BinaryImage &img)
	{
		Eigen::ArrayXXi labels;
		// the padding ring joins every border-touching void region into one
		return label_regions(padded(img), 0, true, labels) - 1;
	}

	int complexity_level(int genus, const ComplexityBinning &binning)
	{
		if (genus < 0)
			throw Error("complexity_level: genus must be non-negative");
		for (std::size_t k = 0; k < binning.upper_bounds.size(); ++k)
			if (genus <= binning.upper_bounds[k])
				return static_cast<int>(k) + 1;
		return binning.num_levels();
	}

	TopologySummary topology_summary(const BinaryImage &img, const ComplexityBinning &binning)
	{
		const EulerCounts counts = euler_number(img);
		TopologySummary s;
		s.betti0 = betti0(img);
		s.diagonal_nodes = counts.diagonal;
		s.genus = s.betti0 - counts.euler;
		if (counts.diagonal > 0)
		{
			const int holes = count_holes(img);
			s.fallback = holes != s.genus || (counts.a1 - counts.a3) % 4 != 0;
			s.genus = holes;
		}
		s.euler = s.betti0 - s.genus;
		s.complexity_level = complexity_level(s.genus, binning);
		return s;
	}

	double m_nd(const GrayImage &img)
	{
		if (img.size() == 0)
			throw Error("m_nd: empty image");
		if ((img < 0.0).any() || (img > 1.0).any() || !img.isFinite().all())
			throw Error("m_nd: pixel values must lie in [0, 1]");
		return (4.0 * img * (1.0 - img)).mean() * 100.0;
	}
} // namespace mmcgen
