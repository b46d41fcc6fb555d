#pragma once

// Generated by tools/codegen/gen_rs_coefficients.py. Do not edit.
// Riemann-Siegel corrections C_k(p), z = 2p - 1: C_k = P_k(z^2) for even k,
// C_k = z * P_k(z^2) for odd k. Coefficients of P_k, lowest order first.

#include <array>

namespace ladderlab::detail {

inline constexpr std::array<double, 24> kRsC0 = {
    3.826834323650897717285e-1,
    4.372404680775204493603e-1,
    1.32376575480343523324e-1,
    -1.360502604767418865498e-2,
    -1.356762197010358088792e-2,
    -1.623725323144465282855e-3,
    2.970535373337969078313e-4,
    7.943300879521469588016e-5,
    4.655612461450450503706e-7,
    -1.432725163095510575408e-6,
    -1.035484711231294607501e-7,
    1.235792708386173805613e-8,
    1.788108385795490498567e-9,
    -3.391414389927035906941e-11,
    -1.632663390256590510137e-11,
    -3.785109318541220382855e-13,
    9.327423259201724845662e-14,
    5.221843015978136855314e-15,
    -3.350673072744263789515e-16,
    -3.412426522811726494081e-17,
    5.75120334143239916034e-19,
    1.489530136321150545476e-19,
    1.25653727170214168533e-21,
    -4.721295250143425668954e-22,
};

inline constexpr double kRsC0Max = 0.924803;

inline constexpr std::array<double, 24> kRsC1 = {
    -2.682510262837534702999e-2,
    1.378477342635185304987e-2,
    3.849125048223508222874e-2,
    9.871066299062076472012e-3,
    -3.310759760858404332909e-3,
    -1.464780857795415082498e-3,
    -1.320794062487696367516e-5,
    5.922748701847141323223e-5,
    5.980242585373448587711e-6,
    -9.641322456169826352673e-7,
    -1.833473372271441176002e-7,
    4.467087562717833599561e-9,
    2.709635082177274321693e-9,
    7.785288654315851046295e-11,
    -2.343762601089368853248e-11,
    -1.583017278998752164216e-12,
    1.211994157372379124665e-13,
    1.458378116110830701758e-14,
    -2.878630525813191750456e-16,
    -8.662862902123724122528e-17,
    -8.43072272713704127156e-19,
    3.630807223097346200173e-19,
    1.162669821283829671941e-20,
    -1.09754867115275318159e-21,
};

inline constexpr double kRsC1Max = 0.0306279;

inline constexpr std::array<double, 26> kRsC2 = {
    5.188542830293168493785e-3,
    3.094658388063474603346e-4,
    -1.133594107822937338218e-2,
    2.233045741958144772057e-3,
    5.196637408862330205117e-3,
    3.439914407620833669466e-4,
    -5.910648427470582821732e-4,
    -1.022997254793585745443e-4,
    2.088839221699275540807e-5,
    5.927665493096535957892e-6,
    -1.642383836243627597769e-7,
    -1.516119970094068286173e-7,
    -5.907803698206667962923e-9,
    2.091151485947818897775e-9,
    1.78156495832923510538e-10,
    -1.616407245535383075286e-11,
    -2.380696249666761570721e-12,
    5.398265295542594918182e-14,
    1.975014219696951527331e-14,
    2.333286873288263483105e-16,
    -1.11875176100480802082e-16,
    -4.164009488883767188501e-18,
    4.446081109291883028903e-19,
    2.854611478363714454573e-20,
    -1.191323143003789430497e-21,
    -1.298163436073649894671e-22,
};

inline constexpr double kRsC2Max = 0.00519585;

inline constexpr std::array<double, 26> kRsC3 = {
    -1.33971609071945690427e-3,
    3.744215136379393704664e-3,
    -1.330317891932146812032e-3,
    -2.265466076547178711476e-3,
    9.548499998506730415112e-4,
    6.010038458963603912076e-4,
    -1.012885828677662195334e-4,
    -6.865733449299825642457e-5,
    5.985366791538598159306e-7,
    3.331659851239947129044e-6,
    2.191928910243508105718e-7,
    -7.890884245681494410555e-8,
    -9.414685081295262151652e-9,
    9.570116210883480301881e-10,
    1.876313745347066279681e-10,
    -4.437837679323399327465e-12,
    -2.242673850561735324841e-12,
    -3.627686865735243689408e-14,
    1.763980955082158160783e-14,
    7.96076524678677775729e-16,
    -9.419651490589690763915e-17,
    -7.133103854569657824557e-18,
    3.28991058455462432118e-19,
    4.180730374898459291363e-20,
    -5.550542071646333789782e-22,
    -1.787044190626012385872e-22,
};

inline constexpr double kRsC3Max = 0.000317699;

inline constexpr std::array<double, 27> kRsC4 = {
    4.648338936176338185363e-4,
    -1.005660736534047075978e-3,
    2.404485657372579302245e-4,
    1.028308614970232187826e-3,
    -7.6578610717556441866e-4,
    -2.036528680308481762148e-4,
    2.321229049106872789514e-4,
    3.260214424386519760774e-5,
    -2.557906251794952514025e-5,
    -4.107464438915744753982e-6,
    1.17811136403712938813e-6,
    2.445656142248457854232e-7,
    -2.391582476734432243033e-8,
    -7.505214207035755288539e-9,
    1.331227941625842819291e-10,
    1.34406267542256197187e-10,
    3.513770042430485928694e-12,
    -1.519154453370391933574e-12,
    -8.915417681447087305495e-14,
    1.119589116522853577323e-14,
    1.051601332991481496367e-15,
    -5.178655273646683661538e-17,
    -8.065874861916566051537e-18,
    1.060820453056396595048e-19,
    4.433680674299408727792e-20,
    4.320051147035015243496e-22,
    -1.823038922959689330542e-22,
};

inline constexpr double kRsC4Max = 0.000465299;

}  // namespace ladderlab::detail
