#include "rdnboost/toy.hpp"

#include "rdnboost/parser.hpp"

namespace rdnboost {
namespace toy {

const char* kPosText =
    "cancer(alice).\n"
    "cancer(bob).\n";

const char* kNegText =
    "cancer(chuck).\n"
    "cancer(fred).\n";

const char* kFactsText =
    "friends(alice,bob).\n"
    "friends(bob,alice).\n"
    "friends(chuck,fred).\n"
    "friends(fred,chuck).\n"
    "smokes(alice).\n"
    "smokes(bob).\n";

const char* kModesText =
    "friends(+person,-person).\n"
    "friends(-person,+person).\n"
    "cancer(+person).\n"
    "smokes(+person).\n";

const char* kTarget = "cancer";

std::vector<Mode> modes() {
  return parse_modes(kModesText).items;
}

Database database() {
  return build_database(parse_ground_atoms(kPosText).items, parse_ground_atoms(kNegText).items,
                        parse_ground_atoms(kFactsText).items, modes());
}

}  // namespace toy
}  // namespace rdnboost
