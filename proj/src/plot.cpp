#include "zplot/plot.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "zplot/parallel.hpp"
#include "zplot/prng.hpp"

namespace zplot {

namespace {

constexpr std::uint64_t kExhaustiveBudget = std::uint64_t(1) << 24;

void require_single_io(const Transducer& t, const char* who) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument(std::string(who) + ": machine is not single input/output");
}

std::int64_t reverse_digits(std::int64_t v, int p, int k) {
    std::int64_t r = 0;
    for (int i = 0; i < k; ++i) {
        r = r * p + v % p;
        v /= p;
    }
    return r;
}

}  // namespace

PlotSet layer(const Transducer& t, int k, bool allow_large, unsigned jobs) {
    require_single_io(t, "layer");
    if (!fits_u64(t.p, k)) throw std::domain_error("layer: p^k exceeds 64-bit coordinates");
    std::uint64_t total = pow_u64(static_cast<unsigned>(t.p), k);
    if (total > kExhaustiveBudget && !allow_large)
        throw std::domain_error("layer: exhaustive budget p^k <= 2^24 exceeded (pass allow_large to override)");
    PlotSet ps;
    ps.p = t.p;
    ps.points.resize(total);
    parallel_for(0, total, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        for (std::uint64_t x = lo; x < hi; ++x)
            ps.points[x] = ExactPoint{k, static_cast<std::int64_t>(x),
                                      static_cast<std::int64_t>(run_nm_u64(t, x, k))};
    });
    return ps;
}

PlotSet plot_union(const Transducer& t, int k, bool allow_large, unsigned jobs) {
    PlotSet all;
    all.p = t.p;
    for (int j = 1; j <= k; ++j) {
        PlotSet lj = layer(t, j, allow_large, jobs);
        all.points.insert(all.points.end(), lj.points.begin(), lj.points.end());
    }
    return all;
}

PlotSet layer_sampled(const Transducer& t, int k, const SampleSpec& spec) {
    require_single_io(t, "layer_sampled");
    if (!fits_u64(t.p, k)) throw std::domain_error("layer_sampled: p^k exceeds 64-bit coordinates");
    std::uint64_t total = pow_u64(static_cast<unsigned>(t.p), k);
    PlotSet ps;
    ps.p = t.p;
    SplitMix64 rng(spec.seed);
    ps.points.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        std::uint64_t x = rng.next() % total;
        ps.points.push_back(ExactPoint{k, static_cast<std::int64_t>(x),
                                       static_cast<std::int64_t>(run_nm_u64(t, x, k))});
    }
    return ps;
}

PlotSet monna_points(const Transducer& t, int k, bool allow_large) {
    PlotSet ps = layer(t, k, allow_large);
    for (ExactPoint& pt : ps.points) {
        pt.x = reverse_digits(pt.x, ps.p, k);
        pt.y = reverse_digits(pt.y, ps.p, k);
    }
    ps.surface = Surface::Square;
    return ps;
}

Bitmap raster(const PlotSet& ps, int res) {
    if (res < 2) throw std::invalid_argument("raster: res must be >= 2");
    Bitmap bmp;
    bmp.res = res;
    bmp.cells.assign(static_cast<std::size_t>(res) * static_cast<std::size_t>(res), 0);
    for (const ExactPoint& pt : ps.points) {
        unsigned __int128 denom = 1;
        for (int i = 0; i < pt.k; ++i) denom *= static_cast<unsigned>(ps.p);
        auto cell = [&](std::int64_t v) {
            unsigned __int128 num = static_cast<unsigned __int128>(v) * static_cast<unsigned>(res);
            return static_cast<int>(num / denom);
        };
        int cx = cell(pt.x), cy = cell(pt.y);
        std::size_t at = static_cast<std::size_t>(cy) * static_cast<std::size_t>(res) + static_cast<std::size_t>(cx);
        if (!bmp.cells[at]) {
            bmp.cells[at] = 1;
            ++bmp.set_count;
        }
    }
    return bmp;
}

std::vector<std::array<double, 3>> torus3d(const PlotSet& ps, double R, double r) {
    if (!(R > r && r > 0)) throw std::invalid_argument("torus3d: need R > r > 0");
    std::vector<std::array<double, 3>> out;
    out.reserve(ps.points.size());
    const double tau = 2.0 * 3.14159265358979323846;
    for (const ExactPoint& pt : ps.points) {
        double denom = std::pow(static_cast<double>(ps.p), pt.k);
        double x = static_cast<double>(pt.x) / denom;
        double y = static_cast<double>(pt.y) / denom;
        double ring = R + r * std::cos(tau * y);
        out.push_back({ring * std::cos(tau * x), ring * std::sin(tau * x), r * std::sin(tau * y)});
    }
    return out;
}

void export_csv(const PlotSet& ps, std::ostream& os) {
    os << "k,X,Y\n";
    for (const ExactPoint& pt : ps.points) os << pt.k << "," << pt.x << "," << pt.y << "\n";
}

PlotSet import_csv(std::istream& is, int p) {
    PlotSet ps;
    ps.p = p;
    std::string line;
    if (!std::getline(is, line) || line != "k,X,Y")
        throw std::invalid_argument("points csv: missing k,X,Y header");
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        ExactPoint pt;
        char c1 = 0, c2 = 0;
        std::istringstream row(line);
        if (!(row >> pt.k >> c1 >> pt.x >> c2 >> pt.y) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("points csv: malformed row at line " + std::to_string(line_no));
        ps.points.push_back(pt);
    }
    return ps;
}

void export_pgm(const Bitmap& bmp, std::ostream& os) {
    os << "P5 " << bmp.res << " " << bmp.res << " 255\n";
    // image rows run top to bottom; cell (0,0) sits bottom-left
    for (int y = bmp.res - 1; y >= 0; --y)
        for (int x = 0; x < bmp.res; ++x)
            os.put(bmp.at(x, y) ? '\0' : static_cast<char>(255));
}

void export_svg(const PlotSet& ps, int res, const std::vector<CableSpec>& cables,
                std::ostream& os) {
    Bitmap bmp = raster(ps, res);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << res << " " << res
       << "\">\n";
    os << "<rect width=\"" << res << "\" height=\"" << res << "\" fill=\"white\"/>\n";
    for (int y = 0; y < bmp.res; ++y)
        for (int x = 0; x < bmp.res; ++x)
            if (bmp.at(x, y))
                os << "<rect x=\"" << x << "\" y=\"" << res - 1 - y
                   << "\" width=\"1\" height=\"1\" fill=\"black\"/>\n";
    for (const CableSpec& c : cables) {
        // straight pieces of y = slope*x + intercept on the unit torus
        double a = c.slope.get_d();
        double b = mod1(c.intercept).get_d();
        double x0 = 0.0;
        double y0 = b;
        while (x0 < 1.0 - 1e-12) {
            double x1 = 1.0;
            if (a > 0) x1 = std::min(x1, x0 + (1.0 - y0) / a);
            else if (a < 0) x1 = std::min(x1, x0 - y0 / a);
            double y1 = y0 + a * (x1 - x0);
            os << "<line x1=\"" << x0 * res << "\" y1=\"" << (1.0 - y0) * res << "\" x2=\""
               << x1 * res << "\" y2=\"" << (1.0 - y1) * res
               << "\" stroke=\"red\" stroke-width=\"0.5\"/>\n";
            x0 = x1;
            y0 = y1 - std::floor(y1);
            if (a > 0 && y0 >= 1.0 - 1e-12) y0 = 0.0;
            if (a < 0 && y0 < 1e-12) y0 = 1.0;
        }
    }
    os << "</svg>\n";
}

void export_csv_file(const PlotSet& ps, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + path);
    export_csv(ps, os);
    if (!os) throw std::ios_base::failure("write failure on " + path);
}

PlotSet import_csv_file(const std::string& path, int p) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::ios_base::failure("cannot open " + path);
    return import_csv(is, p);
}

void export_pgm_file(const Bitmap& bmp, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + path);
    export_pgm(bmp, os);
    if (!os) throw std::ios_base::failure("write failure on " + path);
}

void export_svg_file(const PlotSet& ps, int res, const std::vector<CableSpec>& cables,
                     const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + path);
    export_svg(ps, res, cables, os);
    if (!os) throw std::ios_base::failure("write failure on " + path);
}

}  // namespace zplot
