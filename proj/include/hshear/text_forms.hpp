#pragma once

// Canonical text forms used on the command line:
//
//   phi    H | H_ROT_MINUS1 | Llambda:re=0,im=1 | Llambda:arg=1.047 | koebe
//          | mobius:re=..,im=.. | identity | f0h | f0g
//          any of them may carry rot=<radians> to apply the rotation
//          conj(xi) phi(xi z), xi = e^{i rot}: "H:rot=1.5707963267948966".
//   omega  zero | monomial:lam_re=0,lam_im=-1,N=1 | monomial:lam_arg=..,N=..
//          | blaschke:seed=42,deg=3,scale=1
//          | blaschke:zeros=0.3:0.2/0.1:-0.5,gamma=0,scale=1
//   eta    "re,im" | "theta=<radians>" (eta = e^{2 i theta})
//   family default | monomial-grid:phases=8,nmax=3
//          | blaschke-random:count=50,deg=3,seed=7 | explicit:<omega>[;<omega>...]

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hshear/analytic.hpp"
#include "hshear/schwarz.hpp"

namespace hshear {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "name:k=v,k=v" split into its name and keys.
struct KeyValues {
  std::string name;
  std::map<std::string, std::string> args;
};
KeyValues parse_key_values(std::string_view text);
double parse_real(const std::string& text);
long long parse_integer(const std::string& text);

CatalogId parse_catalog(std::string_view text);
AnalyticFunction parse_phi(std::string_view text);
SchwarzFunction parse_omega(std::string_view text);
cplx parse_eta(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

}  // namespace hshear
