#include "mmcgen/image_io.hpp"

#include "mmcgen/grid.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace mmcgen
{
	namespace
	{
		struct FileCloser
		{
			void operator()(std::FILE *f) const { std::fclose(f); }
		};
		using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

		FilePtr open_file(const std::filesystem::path &path, const char *mode)
		{
			FilePtr f(std::fopen(path.c_str(), mode));
			if (!f)
				throw Error("cannot open '" + path.string() + "'");
			return f;
		}

		std::string lower_extension(const std::filesystem::path &path)
		{
			std::string ext = path.extension().string();
			for (auto &ch : ext)
				ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
			return ext;
		}
	} // namespace

	void write_png(const std::filesystem::path &path, const ByteImage &image)
	{
		auto f = open_file(path, "wb");
		png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
		png_infop info = png ? png_create_info_struct(png) : nullptr;
		if (!png || !info)
		{
			png_destroy_write_struct(&png, &info);
			throw Error("png: allocation failed");
		}
		if (setjmp(png_jmpbuf(png)))
		{
			png_destroy_write_struct(&png, &info);
			throw Error("png: write failed for '" + path.string() + "'");
		}
		png_init_io(png, f.get());
		png_set_IHDR(png, info, static_cast<png_uint_32>(image.cols()), static_cast<png_uint_32>(image.rows()), 8,
		             PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
		png_write_info(png, info);
		std::vector<png_byte> row(image.cols());
		for (Eigen::Index r = 0; r < image.rows(); ++r)
		{
			for (Eigen::Index c = 0; c < image.cols(); ++c)
				row[c] = image(r, c);
			png_write_row(png, row.data());
		}
		png_write_end(png, nullptr);
		png_destroy_write_struct(&png, &info);
	}

	ByteImage read_png(const std::filesystem::path &path)
	{
		auto f = open_file(path, "rb");
		png_byte header[8];
		if (std::fread(header, 1, 8, f.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
			throw Error("'" + path.string() + "' is not a PNG file");
		png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
		png_infop info = png ? png_create_info_struct(png) : nullptr;
		if (!png || !info)
		{
			png_destroy_read_struct(&png, &info, nullptr);
			throw Error("png: allocation failed");
		}
		ByteImage image;
		if (setjmp(png_jmpbuf(png)))
		{
			png_destroy_read_struct(&png, &info, nullptr);
			throw Error("png: corrupt file '" + path.string() + "'");
		}
		png_init_io(png, f.get());
		png_set_sig_bytes(png, 8);
		png_read_info(png, info);
		const auto color = png_get_color_type(png, info);
		if (png_get_bit_depth(png, info) == 16)
			png_set_strip_16(png);
		if (color == PNG_COLOR_TYPE_PALETTE)
			png_set_palette_to_rgb(png);
		if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
			png_set_expand_gray_1_2_4_to_8(png);
		if (color & PNG_COLOR_MASK_ALPHA)
			png_set_strip_alpha(png);
		if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA || color == PNG_COLOR_TYPE_PALETTE)
			png_set_rgb_to_gray_fixed(png, 1, -1, -1);
		png_read_update_info(png, info);
		const auto width = png_get_image_width(png, info);
		const auto height = png_get_image_height(png, info);
		std::vector<png_byte> row(png_get_rowbytes(png, info));
		image.resize(height, width);
		for (png_uint_32 r = 0; r < height; ++r)
		{
			png_read_row(png, row.data(), nullptr);
			for (png_uint_32 c = 0; c < width; ++c)
				image(r, c) = row[c];
		}
		png_destroy_read_struct(&png, &info, nullptr);
		return image;
	}

	void write_pgm(const std::filesystem::path &path, const ByteImage &image)
	{
		std::ofstream out(path, std::ios::binary);
		if (!out)
			throw Error("cannot open '" + path.string() + "'");
		out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
		for (Eigen::Index r = 0; r < image.rows(); ++r)
			for (Eigen::Index c = 0; c < image.cols(); ++c)
				out.put(static_cast<char>(image(r, c)));
		if (!out)
			throw Error("write failed for '" + path.string() + "'");
	}

	ByteImage read_pgm(const std::filesystem::path &path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in)
			throw Error("cannot open '" + path.string() + "'");
		auto next_token = [&in]() {
			std::string tok;
			char ch;
			while (in.get(ch))
			{
				if (ch == '#')
				{
					std::string skip;
					std::getline(in, skip);
					continue;
				}
				if (std::isspace(static_cast<unsigned char>(ch)))
				{
					if (!tok.empty())
						break;
					continue;
				}
				tok.push_back(ch);
			}
			return tok;
		};
		if (next_token() != "P5")
			throw Error("'" + path.string() + "' is not a binary PGM");
		int width = 0, height = 0, maxval = 0;
		try
		{
			width = std::stoi(next_token());
			height = std::stoi(next_token());
			maxval = std::stoi(next_token());
		}
		catch (const std::exception &)
		{
			throw Error("malformed PGM header in '" + path.string() + "'");
		}
		if (width < 1 || height < 1 || maxval != 255)
			throw Error("unsupported PGM in '" + path.string() + "' (need 8-bit)");
		ByteImage image(height, width);
		for (int r = 0; r < height; ++r)
			for (int c = 0; c < width; ++c)
			{
				char ch;
				if (!in.get(ch))
					throw Error("truncated PGM '" + path.string() + "'");
				image(r, c) = static_cast<std::uint8_t>(ch);
			}
		return image;
	}

	GrayImage read_gray_image(const std::filesystem::path &path)
	{
		const std::string ext = lower_extension(path);
		if (ext == ".png")
			return dequantize(read_png(path));
		if (ext == ".pgm")
			return dequantize(read_pgm(path));
		throw Error("unsupported image format '" + ext + "'");
	}
} // namespace mmcgen
