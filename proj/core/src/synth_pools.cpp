#include <string>
#include <vector>

#include "swiftnorm/synth.hpp"

namespace swiftnorm {

const std::vector<std::string>& builtin_streets() {
  static const std::vector<std::string> streets{
      "ABBEY",    "ACACIA",  "ALBERT",   "ALEXANDRA", "ASH",      "BAKER",    "BARRACK",  "BEACH",
      "BEECH",    "BELL",    "BRIDGE",   "BROAD",     "BROOK",    "CANAL",    "CASTLE",   "CEDAR",
      "CHAPEL",   "CHERRY",  "CHESTNUT", "CHURCH",    "CLAREMONT","CLIFF",    "COLLEGE",  "CROWN",
      "DOCK",     "DUKE",    "ELM",      "FARM",      "FERRY",    "FOREST",   "GARDEN",   "GEORGE",
      "GLEBE",    "GRANGE",  "GREEN",    "GROVE",     "HARBOUR",  "HIGH",     "HILL",     "HOLLY",
      "KING",     "KNIGHT",  "LAKE",     "LIME",      "LONDON",   "MAIN",     "MANOR",    "MAPLE",
      "MARKET",   "MEADOW",  "MILL",     "MOUNT",     "NEW",      "NORTH",    "OAK",      "ORCHARD",
      "PARK",     "PRIORY",  "QUEEN",    "RAILWAY",   "RIVER",    "ROSE",     "SCHOOL",   "SOUTH",
      "SPRING",   "STATION", "TOWER",    "UNION",     "VICTORIA", "VILLAGE",  "WATER",    "WELL",
      "WEST",     "WILLOW",  "WINDMILL", "YORK",
  };
  return streets;
}

const std::vector<std::string>& builtin_cities() {
  static const std::vector<std::string> cities{
      "AMSTERDAM", "ATHENS",    "BARCELONA", "BERLIN",   "BIRMINGHAM", "BRUSSELS", "BUDAPEST",
      "CAIRO",     "CHICAGO",   "COPENHAGEN","DUBAI",    "DUBLIN",     "EDINBURGH","FRANKFURT",
      "GENEVA",    "GLASGOW",   "HAMBURG",   "HELSINKI", "HONG KONG",  "ISTANBUL", "JOHANNESBURG",
      "LAGOS",     "LIMASSOL",  "LISBON",    "LONDON",   "LUXEMBOURG", "MADRID",   "MANCHESTER",
      "MILAN",     "MONACO",    "MONTREAL",  "MOSCOW",   "MUMBAI",     "MUNICH",   "NAIROBI",
      "NEW YORK",  "NICOSIA",   "OSLO",      "PARIS",    "PRAGUE",     "RIGA",     "ROME",
      "ROTTERDAM", "SANTIAGO",  "SEOUL",     "SINGAPORE","SOFIA",      "STOCKHOLM","SYDNEY",
      "TALLINN",   "TOKYO",     "TORONTO",   "VALLETTA", "VIENNA",     "VILNIUS",  "WARSAW",
      "ZAGREB",    "ZURICH",
  };
  return cities;
}

}  // namespace swiftnorm
