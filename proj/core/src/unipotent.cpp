#include "poslab/unipotent.hpp"

namespace poslab {

template SquareMatrix<Rational> lusztig_product(std::size_t, const LusztigParams<Rational>&);
template SquareMatrix<double> lusztig_product(std::size_t, const LusztigParams<double>&);
template GaussTriple<Rational> gauss_decompose(const SquareMatrix<Rational>&);
template GaussTriple<double> gauss_decompose(const SquareMatrix<double>&);
template SquareMatrix<Rational> theta_twist(const SquareMatrix<Rational>&);
template SquareMatrix<double> theta_twist(const SquareMatrix<double>&);

}  // namespace poslab
