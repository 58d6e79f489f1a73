#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zplot/rational.hpp"
#include "zplot/transducer.hpp"

namespace zplot {

// One plot point at word length k: the pair (X / p^k, Y / p^k).
// Analysis paths never leave integer coordinates.
struct ExactPoint {
    int k = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

enum class Surface { Square, Torus, CylinderX, CylinderY };

struct PlotSet {
    int p = 2;
    Surface surface = Surface::Torus;
    std::vector<ExactPoint> points;
};

struct SampleSpec {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

// Exhaustive layer k: all (X, nm(run(T, wrd_k(X)))) in X order.
// Refuses p^k > 2^24 unless allow_large is set.
PlotSet layer(const Transducer& t, int k, bool allow_large = false, unsigned jobs = 1);

// Union of the exhaustive layers 1..k, the approximate plot at word length k.
PlotSet plot_union(const Transducer& t, int k, bool allow_large = false, unsigned jobs = 1);

// Sampled layer: deterministic splitmix64 stream of X values.
PlotSet layer_sampled(const Transducer& t, int k, const SampleSpec& spec);

// Digit-reversal view: returned coordinates are (rev_k(X), rev_k(Y)) so the
// real point is still (x / p^k, y / p^k).
PlotSet monna_points(const Transducer& t, int k, bool allow_large = false);

struct Bitmap {
    int res = 0;
    std::vector<std::uint8_t> cells;  // row major, 0 or 1; y grows upward
    std::size_t set_count = 0;
    bool at(int cx, int cy) const { return cells[static_cast<std::size_t>(cy) * static_cast<std::size_t>(res) + static_cast<std::size_t>(cx)] != 0; }
    mpq_class fill_ratio() const {
        mpq_class r(static_cast<unsigned long>(set_count),
                    static_cast<unsigned long>(res) * static_cast<unsigned long>(res));
        r.canonicalize();
        return r;
    }
};

Bitmap raster(const PlotSet& points, int res);

// Visualization only; the analysis never consumes these floats.
std::vector<std::array<double, 3>> torus3d(const PlotSet& points, double R = 2.0, double r = 1.0);

struct CableSpec {
    mpq_class slope;
    mpq_class intercept;
};

void export_csv(const PlotSet& points, std::ostream& os);
PlotSet import_csv(std::istream& is, int p);
void export_pgm(const Bitmap& bmp, std::ostream& os);
void export_svg(const PlotSet& points, int res, const std::vector<CableSpec>& cables,
                std::ostream& os);

void export_csv_file(const PlotSet& points, const std::string& path);
PlotSet import_csv_file(const std::string& path, int p);
void export_pgm_file(const Bitmap& bmp, const std::string& path);
void export_svg_file(const PlotSet& points, int res, const std::vector<CableSpec>& cables,
                     const std::string& path);

}  // namespace zplot
