#pragma once

// Reference subgroup counts; identical to fixtures/reference_tables.json.

namespace nearspace::reference {

inline constexpr const char* tables_json = R"json(
{"tables":[
{"q":9,"by_dim":[["1"],
["1","1"],
["1","10","1"],
["1","91","27","1"],
["1","820","550","52","1"],
["1","7381","10170","1850","85","1"],
["1","66430","180271","56420","4655","126","1"],
["1","597871","3131037","1590771","210035","9821","175","1"],
["1","5380840","53825500","42900312","8521926","612696","18396","232","1"]],"totals":["1","2","12","120","1424","19488","307904","5539712"]},
{"q":64,"by_dim":[["1"],
["1","1"],
["1","65","1"],
["1","4161","192","1"],
["1","266305","28545","382","1"],
["1","17043521","3891520","101125","635","1"],
["1","1090785345","511266561","23105270","261780","951","1"],
["1","69810262081","66021638592","4901267861","89335610","562296","1330","1"]],"totals":["1","2","67","4355","295234","21036803","1625419909","140823067772"]},
{"q":625,"by_dim":[["1"],
["1","1"],
["1","626","1"],
["1","391251","1875","1"],
["1","244531876","2733126","3748","1"],
["1","152832422501","3658206250","9753130","6245","1"],
["1","95520264063126","4721932028751","21925818740","25346895","9366","1"]],"totals":["1","2","628","393128","247268752","156500388128","100264147266880","65739252669562496"]}]}
)json";

}  // namespace nearspace::reference
