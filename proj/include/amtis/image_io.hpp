#ifndef AMTIS_IMAGE_IO_HPP
#define AMTIS_IMAGE_IO_HPP

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <csetjmp>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "amtis/errors.hpp"
#include "amtis/image.hpp"

namespace amtis {

// --- PGM (P5, 8-bit binary) ------------------------------------------------

namespace detail {

// skips whitespace and '#' comments between PGM header tokens
inline int pgm_next_token(std::istream& is) {
    int c = is.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n')
                c = is.get();
        } else if (std::isspace(c)) {
            c = is.get();
        } else {
            break;
        }
    }
    return c;
}

inline unsigned pgm_read_uint(std::istream& is) {
    int c = pgm_next_token(is);
    if (c == EOF || !std::isdigit(c))
        throw IoError("malformed PGM header");
    unsigned value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<unsigned>(c - '0');
        c = is.get();
    }
    if (c != EOF)
        is.unget();
    return value;
}

} // namespace detail

inline GrayImage read_pgm(std::istream& is) {
    if (is.get() != 'P' || is.get() != '5')
        throw IoError("not a binary PGM (P5) stream");
    unsigned w = detail::pgm_read_uint(is);
    unsigned h = detail::pgm_read_uint(is);
    unsigned maxval = detail::pgm_read_uint(is);
    if (w == 0 || h == 0)
        throw IoError("PGM with zero dimension");
    if (maxval == 0 || maxval > 255)
        throw IoError("only 8-bit PGM is supported");
    is.get(); // single whitespace after maxval
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
    is.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (static_cast<std::size_t>(is.gcount()) != pixels.size())
        throw IoError("truncated PGM raster");
    return GrayImage(static_cast<int>(w), static_cast<int>(h), std::move(pixels));
}

inline GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open " + path.string());
    return read_pgm(is);
}

inline void write_pgm(const GrayImage& img, std::ostream& os) {
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
    if (!os)
        throw IoError("failed writing PGM stream");
}

inline void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot create " + path.string());
    write_pgm(img, os);
}

// --- PNG (via libpng's simplified API) --------------------------------------

inline RgbImage read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw IoError("PNG read failed: " + std::string(image.message));
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError("PNG decode failed: " + msg);
    }
    RgbImage out(static_cast<int>(image.width), static_cast<int>(image.height));
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = Rgb{buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
    return out;
}

inline void write_png(const GrayImage& img, const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.pixels.data(), 0,
                                 nullptr))
        throw IoError("PNG write failed: " + std::string(image.message));
}

inline void write_png(const RgbImage& img, const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buffer;
    buffer.reserve(img.pixels.size() * 3);
    for (const Rgb& p : img.pixels) {
        buffer.push_back(p.r);
        buffer.push_back(p.g);
        buffer.push_back(p.b);
    }
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr))
        throw IoError("PNG write failed: " + std::string(image.message));
}

// --- JPEG (via libjpeg) ------------------------------------------------------

namespace detail {

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf env;
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->env, 1);
}

} // namespace detail

inline RgbImage read_jpeg(const std::filesystem::path& path) {
    std::FILE* file = std::fopen(path.string().c_str(), "rb");
    if (!file)
        throw IoError("cannot open " + path.string());

    jpeg_decompress_struct cinfo;
    detail::JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = detail::jpeg_error_exit;

    std::vector<std::uint8_t> pixels;
    int width = 0, height = 0;
    if (setjmp(err.env)) {
        jpeg_destroy_decompress(&cinfo);
        std::fclose(file);
        throw IoError("JPEG decode failed: " + path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    pixels.resize(static_cast<std::size_t>(width) * height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        std::uint8_t* row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    std::fclose(file);

    RgbImage out(width, height);
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = Rgb{pixels[3 * i], pixels[3 * i + 1], pixels[3 * i + 2]};
    return out;
}

// --- Format-sniffing loaders -------------------------------------------------

namespace detail {

enum class ImageFormat { pgm, png, jpeg, unknown };

inline ImageFormat sniff_format(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open " + path.string());
    unsigned char magic[4] = {0, 0, 0, 0};
    is.read(reinterpret_cast<char*>(magic), 4);
    if (magic[0] == 'P' && magic[1] == '5')
        return ImageFormat::pgm;
    if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G')
        return ImageFormat::png;
    if (magic[0] == 0xFF && magic[1] == 0xD8)
        return ImageFormat::jpeg;
    return ImageFormat::unknown;
}

} // namespace detail

/// Loads any supported format as grayscale. PGM loads directly; PNG and
/// JPEG decode to RGB and convert.
inline GrayImage load_gray(const std::filesystem::path& path) {
    switch (detail::sniff_format(path)) {
    case detail::ImageFormat::pgm:
        return read_pgm(path);
    case detail::ImageFormat::png:
        return to_grayscale(read_png(path));
    case detail::ImageFormat::jpeg:
        return to_grayscale(read_jpeg(path));
    default:
        throw IoError("unrecognized image format: " + path.string());
    }
}

} // namespace amtis

#endif
