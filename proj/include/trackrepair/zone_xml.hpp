#pragma once

#include <string>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair {

// Parses a zone description document:
//
//   <Zone ident = "9" name = "ZoneIOLeftTop" plane_name = "ground">
//     <Properties_list>
//       <Property name = "In_out_zone:Entry"/>
//     </Properties_list>
//     <Outline_list>
//       <Point x="-830.0" y="-350.0" z = "0"/>
//       ...
//     </Outline_list>
//   </Zone>
//
// Zone elements may appear bare or under any root element. Property strings
// map to kinds as: In_out_zone:Entry/Exit/InOut and Lost_found_zone:
// Lost/Found/Yes (Yes meaning lost-found). Only the Entry and lost-found
// spellings are attested in source material; the rest follow the same scheme.
std::vector<Zone> parseZoneFile(const std::string& text);

// Inverse of parseZoneFile up to whitespace; attribute names and property
// strings are emitted exactly as parsed ("In_out_zone:Entry" etc.).
std::string serializeZones(const std::vector<Zone>& zones);

std::vector<Zone> loadZoneFile(const std::string& path);
void saveZoneFile(const std::string& path, const std::vector<Zone>& zones);

}  // namespace trackrepair
