#include "mmcgen/geometry.hpp"
#include "mmcgen/raster.hpp"

#include <algorithm>
#include <cmath>

namespace mmcgen
{
	GrayImage to_raster(const ScalarField &elemental, const Grid &grid)
	{
		if (elemental.size() != grid.num_elements())
			throw Error("raster: field size does not match the grid");
		GrayImage image(grid.ny, grid.nx);
		for (int j = 0; j < grid.ny; ++j)
			for (int i = 0; i < grid.nx; ++i)
				image(grid.ny - 1 - j, i) = elemental(grid.element(i, j));
		return image;
	}

	ScalarField from_raster(const GrayImage &image, const Grid &grid)
	{
		if (image.rows() != grid.ny || image.cols() != grid.nx)
			throw Error("raster: image size does not match the grid");
		ScalarField field(grid.num_elements());
		for (int j = 0; j < grid.ny; ++j)
			for (int i = 0; i < grid.nx; ++i)
				field(grid.element(i, j)) = image(grid.ny - 1 - j, i);
		return field;
	}

	BinaryImage threshold_image(const GrayImage &image, double threshold)
	{
		return (image > threshold).cast<std::uint8_t>();
	}

	GrayImage upscale_nearest(const GrayImage &image, int row_factor, int col_factor)
	{
		if (row_factor < 1 || col_factor < 1)
			throw Error("raster: upscale factors must be >= 1");
		GrayImage out(image.rows() * row_factor, image.cols() * col_factor);
		for (Eigen::Index r = 0; r < image.rows(); ++r)
			for (Eigen::Index c = 0; c < image.cols(); ++c)
				out.block(r * row_factor, c * col_factor, row_factor, col_factor).setConstant(image(r, c));
		return out;
	}

	GrayImage block_average(const GrayImage &image, int rows, int cols)
	{
		if (rows < 1 || cols < 1 || image.rows() % rows != 0 || image.cols() % cols != 0)
			throw Error("raster: source dimensions are not integer multiples of the target");
		const Eigen::Index fr = image.rows() / rows;
		const Eigen::Index fc = image.cols() / cols;
		GrayImage out(rows, cols);
		for (int r = 0; r < rows; ++r)
			for (int c = 0; c < cols; ++c)
				out(r, c) = image.block(r * fr, c * fc, fr, fc).mean();
		return out;
	}

	ByteImage quantize(const GrayImage &image)
	{
		return image.unaryExpr([](double v) {
			return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
		});
	}

	GrayImage dequantize(const ByteImage &image)
	{
		return image.cast<double>() / 255.0;
	}

	BinaryImage binarize_structure(const ScalarField &phi_nodal, const Grid &grid, const HeavisideParams &params,
	                               double threshold)
	{
		return threshold_image(to_raster(element_densities(phi_nodal, grid, params), grid), threshold);
	}
} // namespace mmcgen
