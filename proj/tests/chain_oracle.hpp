#pragma once

// (E1 - E0) / 2 of the periodic chain from the momentum sums, evaluated in
// 80-digit mpmath (independent of the library's quadrature).
struct SplittingOracle {
  int m;
  double g;
  double delta;
};

inline constexpr SplittingOracle kSplittingOracle[] = {
    {2, 1.05, 4.0e-1},
    {2, 1.2, 3.6204993518133087883e-1},
    {2, 1.5, 3.0277563773199464656e-1},
    {2, 2, 2.3606797749978969641e-1},
    {2, 2.5, 1.9258240356725201563e-1},
    {2, 3, 1.62277660168379332e-1},
    {3, 1.05, 2.5038613597768919118e-1},
    {3, 1.2, 2.0567446973211308612e-1},
    {3, 1.5, 1.4342618376195851913e-1},
    {3, 2, 8.6299496504286703026e-2},
    {3, 2.5, 5.6950472571137673195e-2},
    {3, 3, 4.0200035600601297382e-2},
    {4, 1.05, 1.7990957866511216591e-1},
    {4, 1.2, 1.3386738410279883946e-1},
    {4, 1.5, 7.7228637546078483362e-2},
    {4, 2, 3.5490432639924300809e-2},
    {4, 2.5, 1.8846277818703853291e-2},
    {4, 3, 1.1114460560291281963e-2},
    {5, 1.05, 1.3864670360116733556e-1},
    {5, 1.2, 9.3213028663955399442e-2},
    {5, 1.5, 4.4170208535843307107e-2},
    {5, 2, 1.5402451454490924757e-2},
    {5, 2.5, 6.5659865509619927594e-3},
    {5, 3, 3.2319072709866597225e-3},
    {6, 1.05, 1.1152052155591228861e-1},
    {6, 1.2, 6.756699984717123776e-2},
    {6, 1.5, 2.6148084281153039575e-2},
    {6, 2, 6.8924449702071793033e-3},
    {6, 2.5, 2.3560836553229860827e-3},
    {6, 3, 9.6747844910777465888e-4},
    {8, 1.05, 7.8070939265410954931e-2},
    {8, 1.2, 3.8132571297284076574e-2},
    {8, 1.5, 9.7227035653096701441e-3},
    {8, 2, 1.455847500774212408e-3},
    {8, 2.5, 3.1948313294054562709e-4},
    {8, 3, 9.1236474390383793944e-5},
    {12, 1.05, 4.5359115426324957142e-2},
    {12, 1.2, 1.4050127679469778297e-2},
    {12, 1.5, 1.5140036361575179368e-3},
    {12, 2, 7.246878690013822485e-5},
    {12, 2.5, 6.5358481719150092574e-6},
    {12, 3, 9.0154783772422596532e-7},
    {16, 1.05, 2.9564893460753155836e-2},
    {16, 1.2, 5.6713431013125890038e-3},
    {16, 1.5, 2.5435229728357037497e-4},
    {16, 2, 3.8735676120204578791e-6},
    {16, 2.5, 1.4335447441593882533e-7},
    {16, 3, 9.5443005377266270102e-9},
    {24, 1.05, 1.4734075418238207467e-2},
    {24, 1.2, 1.0396860614633696382e-3},
    {24, 1.5, 7.9538868173444644422e-6},
    {24, 2, 1.2199145327926059735e-8},
    {24, 2.5, 7.588989227306742046e-11},
    {24, 3, 1.1761335467335961438e-12},
    {32, 1.05, 8.156257471140396862e-3},
    {32, 1.2, 2.0558308646185959869e-4},
    {32, 1.5, 2.6622166545597922222e-7},
    {32, 2, 4.1006423942506680881e-11},
    {32, 2.5, 4.2841235935967990478e-14},
    {32, 3, 1.5448530695021706259e-16},
    {48, 1.05, 2.8727846354819725085e-3},
    {48, 1.2, 8.9066101093665564873e-6},
    {48, 1.5, 3.2774051419876444448e-10},
    {48, 2, 5.0762502721380945442e-16},
    {48, 2.5, 1.4943133949017974024e-20},
    {48, 3, 2.9159140687204524679e-24},
    {64, 1.05, 1.1048498003728506544e-3},
    {64, 1.2, 4.1308160145836719417e-7},
    {64, 1.5, 4.3000007135642427318e-13},
    {64, 2, 6.6864555131972344326e-21},
    {64, 2.5, 5.5432432375337761334e-27},
    {64, 3, 5.8519821264930760355e-32},
};
