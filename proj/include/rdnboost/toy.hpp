#ifndef RDNBOOST_TOY_HPP
#define RDNBOOST_TOY_HPP

#include "rdnboost/background.hpp"
#include "rdnboost/database.hpp"

namespace rdnboost {
namespace toy {

// Built-in smokes-friends-cancer dataset: four people where the two smokers
// have cancer and the two non-smokers do not. Small, perfectly separable via
// smokes, and symmetric in the friends relation.
std::vector<Mode> modes();
Database database();

extern const char* kPosText;
extern const char* kNegText;
extern const char* kFactsText;
extern const char* kModesText;
extern const char* kTarget;

}  // namespace toy
}  // namespace rdnboost

#endif  // RDNBOOST_TOY_HPP
