#include "mow/io.hpp"
#include "mow/error.hpp"

#include <fstream>
#include <sstream>

namespace mow {

namespace {

// Pulls the next token, skipping blank lines and '#' comments.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next() {
        std::string tok;
        while (true) {
            if (!(line_ >> tok)) {
                std::string raw;
                if (!std::getline(in_, raw)) fail(errc::parse_error, "unexpected end of input");
                auto hash = raw.find('#');
                if (hash != std::string::npos) raw.erase(hash);
                line_.clear();
                line_.str(raw);
                continue;
            }
            return tok;
        }
    }

    long next_int() {
        std::string t = next();
        try {
            std::size_t pos = 0;
            long v = std::stol(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail(errc::parse_error, "expected integer, got '" + t + "'");
        }
    }

    double next_double() {
        std::string t = next();
        try {
            std::size_t pos = 0;
            double v = std::stod(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail(errc::parse_error, "expected number, got '" + t + "'");
        }
    }

private:
    std::istream& in_;
    std::istringstream line_;
};

std::vector<Point> read_ring(TokenReader& tr, long n) {
    if (n < 3) fail(errc::parse_error, "ring must have at least 3 vertices");
    std::vector<Point> ring;
    ring.reserve(n);
    for (long k = 0; k < n; ++k) {
        double x = tr.next_double();
        double y = tr.next_double();
        ring.push_back({x, y});
    }
    return ring;
}

void write_ring(std::ostream& out, const std::vector<Point>& ring) {
    char buf[80];
    for (const Point& p : ring) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g\n", p.x, p.y);
        out << buf;
    }
}

} // namespace

Polygon read_polygon(std::istream& in) {
    TokenReader tr(in);
    long n = tr.next_int();
    long h = tr.next_int();
    if (h < 0 || h > 100000) fail(errc::parse_error, "bad hole count");
    Polygon poly;
    poly.outer = read_ring(tr, n);
    for (long k = 0; k < h; ++k) poly.holes.push_back(read_ring(tr, tr.next_int()));
    return poly;
}

void write_polygon(std::ostream& out, const Polygon& poly) {
    out << poly.outer.size() << ' ' << poly.holes.size() << '\n';
    write_ring(out, poly.outer);
    for (const auto& hole : poly.holes) {
        out << hole.size() << '\n';
        write_ring(out, hole);
    }
}

Polygon load_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    return read_polygon(in);
}

void save_polygon(const std::string& path, const Polygon& poly) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot write " + path);
    write_polygon(out, poly);
}

std::vector<Point> read_tour(std::istream& in) {
    TokenReader tr(in);
    long k = tr.next_int();
    if (k < 0) fail(errc::parse_error, "bad tour size");
    std::vector<Point> pts;
    pts.reserve(k);
    for (long i = 0; i < k; ++i) {
        double x = tr.next_double();
        double y = tr.next_double();
        pts.push_back({x, y});
    }
    return pts;
}

void write_tour(std::ostream& out, const std::vector<Point>& pts) {
    out << pts.size() << '\n';
    write_ring(out, pts);
}

std::vector<Point> load_tour(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    return read_tour(in);
}

void save_tour(const std::string& path, const std::vector<Point>& pts) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot write " + path);
    write_tour(out, pts);
}

} // namespace mow
