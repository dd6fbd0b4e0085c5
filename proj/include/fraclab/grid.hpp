#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/support.hpp"

namespace fraclab {

enum class DomainKind { Interval, Ball, Box };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::Interval: return "interval";
        case DomainKind::Ball: return "ball";
        case DomainKind::Box: return "box";
    }
    return "?";
}

inline DomainKind domain_kind_from(const std::string& name) {
    if (name == "interval") return DomainKind::Interval;
    if (name == "ball") return DomainKind::Ball;
    if (name == "box") return DomainKind::Box;
    throw std::invalid_argument("unknown domain kind: " + name);
}

/// Uniform vertex-centered lattice on a symmetric domain about the origin.
///
/// Nodes are the lattice points i*h strictly inside Omega; the function value
/// at every other point of R^N is zero (the X0 convention). The half width /
/// radius must be an integer multiple of h so that in 1D the interpolated
/// nodal extension vanishes exactly on the boundary nodes +-L.
class DiscreteDomain {
public:
    static std::shared_ptr<const DiscreteDomain> make_interval(double halfwidth, double h) {
        return std::shared_ptr<const DiscreteDomain>(
            new DiscreteDomain(DomainKind::Interval, 1, halfwidth, h));
    }
    static std::shared_ptr<const DiscreteDomain> make_ball(int dim, double radius, double h) {
        return std::shared_ptr<const DiscreteDomain>(
            new DiscreteDomain(DomainKind::Ball, dim, radius, h));
    }
    static std::shared_ptr<const DiscreteDomain> make_box(int dim, double halfwidth, double h) {
        return std::shared_ptr<const DiscreteDomain>(
            new DiscreteDomain(DomainKind::Box, dim, halfwidth, h));
    }
    static std::shared_ptr<const DiscreteDomain> make(DomainKind kind, int dim,
                                                      double param, double h) {
        return std::shared_ptr<const DiscreteDomain>(new DiscreteDomain(kind, dim, param, h));
    }

    DomainKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double spacing() const { return h_; }
    double param() const { return param_; }      ///< half width or radius
    int cells_per_halfwidth() const { return m_; }
    int size() const { return static_cast<int>(coords_.size()) / dim_; }
    double cell_measure() const { return std::pow(h_, dim_); }

    std::span<const double> node(int i) const {
        return {coords_.data() + static_cast<std::size_t>(i) * dim_,
                static_cast<std::size_t>(dim_)};
    }
    std::span<const int> lattice(int i) const {
        return {lattice_.data() + static_cast<std::size_t>(i) * dim_,
                static_cast<std::size_t>(dim_)};
    }

    /// Node index of lattice point (i, j), or -1 when that point is exterior.
    int lattice_index(int i, int j = 0) const {
        const int w = 2 * m_ - 1;
        const int a = i + m_ - 1, b = j + m_ - 1;
        if (a < 0 || a >= w || b < 0 || b >= w) return -1;
        return index_map_[static_cast<std::size_t>(dim_ == 1 ? a : a * w + b)];
    }

    /// Distance to the boundary of Omega.
    double boundary_distance(std::span<const double> x) const {
        if (kind_ == DomainKind::Box) {
            double d = param_;
            for (double c : x) d = std::min(d, param_ - std::abs(c));
            return d;
        }
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return param_ - std::sqrt(r2);
    }

    bool contains(std::span<const double> x) const { return boundary_distance(x) > 0.0; }

private:
    DiscreteDomain(DomainKind kind, int dim, double param, double h)
        : kind_(kind), dim_(dim), h_(h), param_(param) {
        if (dim < 1 || dim > 2) throw std::domain_error("DiscreteDomain: dim must be 1 or 2");
        if (kind == DomainKind::Interval && dim != 1)
            throw std::domain_error("DiscreteDomain: interval is one-dimensional");
        if (!(h > 0.0) || !(param > 0.0))
            throw std::domain_error("DiscreteDomain: spacing and size must be positive");
        const double cells = param / h;
        m_ = static_cast<int>(std::lround(cells));
        if (m_ < 2 || std::abs(m_ * h - param) > 1e-9 * param)
            throw std::domain_error("DiscreteDomain: half width must be an integer multiple of h (>= 2 cells)");
        build();
        if (dim_ == 1 && size() < 3)
            throw std::domain_error("DiscreteDomain: needs at least 3 interior nodes per axis");
    }

    void build() {
        const int w = 2 * m_ - 1;
        index_map_.assign(dim_ == 1 ? w : static_cast<std::size_t>(w) * w, -1);
        if (dim_ == 1) {
            for (int i = -(m_ - 1); i <= m_ - 1; ++i) {
                index_map_[static_cast<std::size_t>(i + m_ - 1)] =
                    static_cast<int>(lattice_.size());
                lattice_.push_back(i);
                coords_.push_back(i * h_);
            }
            return;
        }
        const double r2max = param_ * param_;
        for (int i = -(m_ - 1); i <= m_ - 1; ++i) {
            for (int j = -(m_ - 1); j <= m_ - 1; ++j) {
                const double x = i * h_, y = j * h_;
                if (kind_ == DomainKind::Ball && !(x * x + y * y < r2max)) continue;
                index_map_[static_cast<std::size_t>((i + m_ - 1) * w + (j + m_ - 1))] =
                    static_cast<int>(lattice_.size() / 2);
                lattice_.push_back(i);
                lattice_.push_back(j);
                coords_.push_back(x);
                coords_.push_back(y);
            }
        }
    }

    DomainKind kind_;
    int dim_;
    double h_;
    double param_;
    int m_ = 0;
    std::vector<double> coords_;
    std::vector<int> lattice_;
    std::vector<int> index_map_;
};

using DomainPtr = std::shared_ptr<const DiscreteDomain>;

/// Nodal values on the interior lattice of a DiscreteDomain, extended by
/// zero outside Omega.
struct Field {
    DomainPtr domain;
    Eigen::VectorXd values;

    Field() = default;
    explicit Field(DomainPtr dom) : domain(std::move(dom)) {
        values = Eigen::VectorXd::Zero(domain->size());
    }
    Field(DomainPtr dom, Eigen::VectorXd v) : domain(std::move(dom)), values(std::move(v)) {
        if (values.size() != domain->size())
            throw std::invalid_argument("Field: value count does not match domain");
    }

    int size() const { return static_cast<int>(values.size()); }

    template <class F>
    static Field sample(DomainPtr dom, F&& f) {
        Field out(dom);
        for (int i = 0; i < out.size(); ++i) out.values[i] = f(dom->node(i));
        return out;
    }

    /// Midpoint-rule integral h^N sum g(value_i).
    template <class G>
    double integrate_pointwise(G&& g) const {
        double acc = 0.0;
        for (int i = 0; i < size(); ++i) acc += g(values[i]);
        return acc * domain->cell_measure();
    }

    double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

inline void require_same_domain(const Field& a, const Field& b) {
    if (a.domain != b.domain &&
        !(a.domain && b.domain && a.domain->kind() == b.domain->kind() &&
          a.domain->dim() == b.domain->dim() &&
          a.domain->spacing() == b.domain->spacing() &&
          a.domain->param() == b.domain->param()))
        throw std::invalid_argument("fields live on different domains");
}

/// Linear interpolation of the zero-extended nodal field at an arbitrary
/// point (1D only; used by the profile diagnostics).
inline double interpolate1d(const Field& f, double x) {
    const auto& dom = *f.domain;
    if (dom.dim() != 1) throw std::invalid_argument("interpolate1d: 1D fields only");
    const double t = x / dom.spacing();
    const int i0 = static_cast<int>(std::floor(t));
    const double w = t - i0;
    const int a = dom.lattice_index(i0);
    const int b = dom.lattice_index(i0 + 1);
    const double va = a >= 0 ? f.values[a] : 0.0;
    const double vb = b >= 0 ? f.values[b] : 0.0;
    return va * (1.0 - w) + vb * w;
}

/// CSV serialization: `# domain=<kind> h=<h> n=<count>` then
/// `index,coords...,value` rows, 17 significant digits throughout.
inline void write_field_csv(const Field& f, std::ostream& os) {
    const auto& dom = *f.domain;
    os << "# domain=" << to_string(dom.kind()) << " h=" << format_g17(dom.spacing())
       << " n=" << dom.size() << "\n";
    os << "# dim=" << dom.dim() << " param=" << format_g17(dom.param()) << "\n";
    for (int i = 0; i < dom.size(); ++i) {
        os << i;
        for (double c : dom.node(i)) os << "," << format_g17(c);
        os << "," << format_g17(f.values[i]) << "\n";
    }
}

inline void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_field_csv(f, os);
}

inline Field read_field_csv(std::istream& is) {
    std::string line;
    std::string kind;
    double h = 0.0, param = 0.0;
    int n = 0, dim = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "domain") kind = val;
                else if (key == "h") h = std::stod(val);
                else if (key == "n") n = std::stoi(val);
                else if (key == "dim") dim = std::stoi(val);
                else if (key == "param") param = std::stod(val);
            }
            continue;
        }
        break;
    }
    if (kind.empty() || h <= 0.0 || param <= 0.0 || dim == 0)
        throw std::runtime_error("field csv: missing header");
    auto dom = DiscreteDomain::make(domain_kind_from(kind), dim, param, h);
    if (dom->size() != n) throw std::runtime_error("field csv: node count mismatch");
    Field f(dom);
    int rows = 0;
    do {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        const int idx = std::stoi(cell);
        double value = 0.0;
        while (std::getline(ls, cell, ',')) value = std::stod(cell);
        if (idx < 0 || idx >= n) throw std::runtime_error("field csv: bad index");
        f.values[idx] = value;
        ++rows;
    } while (std::getline(is, line));
    if (rows != n) throw std::runtime_error("field csv: row count mismatch");
    return f;
}

inline Field read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_field_csv(is);
}

} // namespace fraclab
