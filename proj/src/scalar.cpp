#include "gapscope/scalar.hpp"

#include <cctype>

namespace gapscope {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (char ch : text)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      throw std::invalid_argument("bad rational literal: " + text);
  Rational x;
  if (mpq_set_str(x.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (mpz_sgn(mpq_denref(x.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator: " + text);
  x.canonicalize();
  return x;
}

} // namespace gapscope
