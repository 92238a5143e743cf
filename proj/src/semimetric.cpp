#include "nullgeom/semimetric.hpp"

namespace nullgeom {

Signature::Signature(std::vector<int> s) : signs(std::move(s))
{
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] != 1 && signs[k] != -1) {
            throw std::invalid_argument("signature entry " + std::to_string(k) + " must be +1 or -1");
        }
    }
}

Signature Signature::lorentzian(int dim)
{
    std::vector<int> s(dim, 1);
    if (dim > 0) {
        s[0] = -1;
    }
    return Signature(std::move(s));
}

Signature Signature::euclidean(int dim)
{
    return Signature(std::vector<int>(dim, 1));
}

} // namespace nullgeom
