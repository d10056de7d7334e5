#include "rkrlw/grid.hpp"

#include <stdexcept>
#include <string>

namespace rkrlw {

Grid build_grid(double x_left, double x_right, int M) {
    if (!(x_left < x_right)) {
        throw std::invalid_argument("invalid domain: x_left = " + std::to_string(x_left) +
                                    " must be below x_right = " + std::to_string(x_right));
    }
    if (M < 8) {
        throw std::invalid_argument("grid too coarse: M = " + std::to_string(M) +
                                    " but the fifth-order stencil needs M >= 8");
    }
    Grid g;
    g.x_left = x_left;
    g.x_right = x_right;
    g.M = M;
    g.h = (x_right - x_left) / M;
    return g;
}

}  // namespace rkrlw
