"""Tabulated symmetric triangle quadrature rules (generated by tools/gen_quadrature.py).

Each entry maps the exactness degree to (barycentric points, weights);
weights sum to one.
"""
RULES = {
    1: (
        [
            (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
        ],
        [
            1.0,
        ],
    ),
    2: (
        [
            (0.16666666666666666, 0.16666666666666666, 0.6666666666666667),
            (0.6666666666666667, 0.16666666666666666, 0.16666666666666666),
            (0.16666666666666666, 0.6666666666666667, 0.16666666666666666),
        ],
        [
            0.3333333333333333,
            0.3333333333333333,
            0.3333333333333333,
        ],
    ),
    3: (
        [
            (0.1476246643247042, 0.7047506713505916, 0.1476246643247042),
            (0.1476246643247042, 0.1476246643247042, 0.7047506713505916),
            (0.7047506713505916, 0.1476246643247042, 0.1476246643247042),
            (0.4529985576790191, 0.4529985576790191, 0.09400288464196183),
            (0.09400288464196183, 0.4529985576790191, 0.4529985576790191),
            (0.4529985576790191, 0.09400288464196183, 0.4529985576790191),
        ],
        [
            0.2224323903211163,
            0.2224323903211163,
            0.2224323903211163,
            0.11090094301221715,
            0.11090094301221715,
            0.11090094301221715,
        ],
    ),
    4: (
        [
            (0.0915762135097709, 0.8168475729804582, 0.0915762135097709),
            (0.8168475729804582, 0.0915762135097709, 0.0915762135097709),
            (0.0915762135097709, 0.0915762135097709, 0.8168475729804582),
            (0.44594849091596483, 0.10810301816807033, 0.44594849091596483),
            (0.10810301816807033, 0.44594849091596483, 0.44594849091596483),
            (0.44594849091596483, 0.44594849091596483, 0.10810301816807033),
        ],
        [
            0.109951743655322,
            0.109951743655322,
            0.109951743655322,
            0.22338158967801133,
            0.22338158967801133,
            0.22338158967801133,
        ],
    ),
    5: (
        [
            (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
            (0.4701420641051155, 0.4701420641051155, 0.059715871789769004),
            (0.059715871789769004, 0.4701420641051155, 0.4701420641051155),
            (0.4701420641051155, 0.059715871789769004, 0.4701420641051155),
            (0.797426985353087, 0.10128650732345652, 0.10128650732345652),
            (0.10128650732345652, 0.797426985353087, 0.10128650732345652),
            (0.10128650732345652, 0.10128650732345652, 0.797426985353087),
        ],
        [
            0.22500000000000273,
            0.13239415278850486,
            0.13239415278850486,
            0.13239415278850486,
            0.12593918054482753,
            0.12593918054482753,
            0.12593918054482753,
        ],
    ),
    6: (
        [
            (0.4801379641122255, 0.4801379641122255, 0.03972407177554904),
            (0.4801379641122255, 0.03972407177554904, 0.4801379641122255),
            (0.03972407177554904, 0.4801379641122255, 0.4801379641122255),
            (0.21942998254978302, 0.561140034900434, 0.21942998254978302),
            (0.21942998254978302, 0.21942998254978302, 0.561140034900434),
            (0.561140034900434, 0.21942998254978302, 0.21942998254978302),
            (0.019371724361242626, 0.14161901592396184, 0.8390092597147956),
            (0.019371724361242626, 0.8390092597147956, 0.14161901592396184),
            (0.14161901592396184, 0.019371724361242626, 0.8390092597147956),
            (0.14161901592396184, 0.8390092597147956, 0.019371724361242626),
            (0.8390092597147956, 0.019371724361242626, 0.14161901592396184),
            (0.8390092597147956, 0.14161901592396184, 0.019371724361242626),
        ],
        [
            0.08073108959301707,
            0.08073108959301707,
            0.08073108959301707,
            0.17133312415299903,
            0.17133312415299903,
            0.17133312415299903,
            0.040634559793658674,
            0.040634559793658674,
            0.040634559793658674,
            0.040634559793658674,
            0.040634559793658674,
            0.040634559793658674,
        ],
    ),
    7: (
        [
            (0.4743087174151342, 0.4743087174151342, 0.05138256516973161),
            (0.4743087174151342, 0.05138256516973161, 0.4743087174151342),
            (0.05138256516973161, 0.4743087174151342, 0.4743087174151342),
            (0.5165260452860545, 0.24173697735697278, 0.24173697735697278),
            (0.24173697735697278, 0.5165260452860545, 0.24173697735697278),
            (0.24173697735697278, 0.24173697735697278, 0.5165260452860545),
            (0.03598255191586272, 0.9280348961682745, 0.03598255191586272),
            (0.9280348961682745, 0.03598255191586272, 0.03598255191586272),
            (0.03598255191586272, 0.03598255191586272, 0.9280348961682745),
            (0.7510153366957475, 0.20165829575584945, 0.04732636754840305),
            (0.7510153366957475, 0.04732636754840305, 0.20165829575584945),
            (0.20165829575584945, 0.7510153366957475, 0.04732636754840305),
            (0.20165829575584945, 0.04732636754840305, 0.7510153366957475),
            (0.04732636754840305, 0.7510153366957475, 0.20165829575584945),
            (0.04732636754840305, 0.20165829575584945, 0.7510153366957475),
        ],
        [
            0.07615732516155092,
            0.07615732516155092,
            0.07615732516155092,
            0.12770063150545227,
            0.12770063150545227,
            0.12770063150545227,
            0.017990227793957533,
            0.017990227793957533,
            0.017990227793957533,
            0.055742574436186326,
            0.055742574436186326,
            0.055742574436186326,
            0.055742574436186326,
            0.055742574436186326,
            0.055742574436186326,
        ],
    ),
    8: (
        [
            (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
            (0.05054722831703307, 0.05054722831703307, 0.8989055433659339),
            (0.05054722831703307, 0.8989055433659339, 0.05054722831703307),
            (0.8989055433659339, 0.05054722831703307, 0.05054722831703307),
            (0.08141482341458195, 0.459292588292709, 0.459292588292709),
            (0.459292588292709, 0.08141482341458195, 0.459292588292709),
            (0.459292588292709, 0.459292588292709, 0.08141482341458195),
            (0.6588613844965101, 0.17056930775174492, 0.17056930775174492),
            (0.17056930775174492, 0.17056930775174492, 0.6588613844965101),
            (0.17056930775174492, 0.6588613844965101, 0.17056930775174492),
            (0.2631128296346908, 0.008394777409926545, 0.7284923929553827),
            (0.2631128296346908, 0.7284923929553827, 0.008394777409926545),
            (0.008394777409926545, 0.2631128296346908, 0.7284923929553827),
            (0.008394777409926545, 0.7284923929553827, 0.2631128296346908),
            (0.7284923929553827, 0.2631128296346908, 0.008394777409926545),
            (0.7284923929553827, 0.008394777409926545, 0.2631128296346908),
        ],
        [
            0.1443156076777582,
            0.03245849762320146,
            0.03245849762320146,
            0.03245849762320146,
            0.09509163426730009,
            0.09509163426730009,
            0.09509163426730009,
            0.10321737053472961,
            0.10321737053472961,
            0.10321737053472961,
            0.027230314174424702,
            0.027230314174424702,
            0.027230314174424702,
            0.027230314174424702,
            0.027230314174424702,
            0.027230314174424702,
        ],
    ),
    9: (
        [
            (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
            (0.9105409732115076, 0.04472951339424617, 0.04472951339424617),
            (0.04472951339424617, 0.04472951339424617, 0.9105409732115076),
            (0.04472951339424617, 0.9105409732115076, 0.04472951339424617),
            (0.18820353562114261, 0.6235929287577148, 0.18820353562114261),
            (0.6235929287577148, 0.18820353562114261, 0.18820353562114261),
            (0.18820353562114261, 0.18820353562114261, 0.6235929287577148),
            (0.12582081700104886, 0.43708959149947557, 0.43708959149947557),
            (0.43708959149947557, 0.12582081700104886, 0.43708959149947557),
            (0.43708959149947557, 0.43708959149947557, 0.12582081700104886),
            (0.02063496159400613, 0.48968251920299694, 0.48968251920299694),
            (0.48968251920299694, 0.02063496159400613, 0.48968251920299694),
            (0.48968251920299694, 0.48968251920299694, 0.02063496159400613),
            (0.22196298915964635, 0.03683841205564141, 0.7411985987847122),
            (0.22196298915964635, 0.7411985987847122, 0.03683841205564141),
            (0.03683841205564141, 0.22196298915964635, 0.7411985987847122),
            (0.03683841205564141, 0.7411985987847122, 0.22196298915964635),
            (0.7411985987847122, 0.22196298915964635, 0.03683841205564141),
            (0.7411985987847122, 0.03683841205564141, 0.22196298915964635),
        ],
        [
            0.09713579629193167,
            0.025577675658465488,
            0.025577675658465488,
            0.025577675658465488,
            0.07964773892723603,
            0.07964773892723603,
            0.07964773892723603,
            0.07782754100800136,
            0.07782754100800136,
            0.07782754100800136,
            0.03133470021945693,
            0.03133470021945693,
            0.03133470021945693,
            0.043283539378098125,
            0.043283539378098125,
            0.043283539378098125,
            0.043283539378098125,
            0.043283539378098125,
            0.043283539378098125,
        ],
    ),
    10: (
        [
            (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
            (0.48557763338440507, 0.028844733231189856, 0.48557763338440507),
            (0.028844733231189856, 0.48557763338440507, 0.48557763338440507),
            (0.48557763338440507, 0.48557763338440507, 0.028844733231189856),
            (0.7810368490326551, 0.10948157548367242, 0.10948157548367242),
            (0.10948157548367242, 0.10948157548367242, 0.7810368490326551),
            (0.10948157548367242, 0.7810368490326551, 0.10948157548367242),
            (0.7283239046010967, 0.025003534761310692, 0.24667256063759255),
            (0.7283239046010967, 0.24667256063759255, 0.025003534761310692),
            (0.025003534761310692, 0.7283239046010967, 0.24667256063759255),
            (0.025003534761310692, 0.24667256063759255, 0.7283239046010967),
            (0.24667256063759255, 0.7283239046010967, 0.025003534761310692),
            (0.24667256063759255, 0.025003534761310692, 0.7283239046010967),
            (0.5503529418246248, 0.30793983876381203, 0.14170721941156317),
            (0.5503529418246248, 0.14170721941156317, 0.30793983876381203),
            (0.30793983876381203, 0.5503529418246248, 0.14170721941156317),
            (0.30793983876381203, 0.14170721941156317, 0.5503529418246248),
            (0.14170721941156317, 0.5503529418246248, 0.30793983876381203),
            (0.14170721941156317, 0.30793983876381203, 0.5503529418246248),
            (0.9236559335889205, 0.009540815400229894, 0.06680325101084959),
            (0.9236559335889205, 0.06680325101084959, 0.009540815400229894),
            (0.009540815400229894, 0.9236559335889205, 0.06680325101084959),
            (0.009540815400229894, 0.06680325101084959, 0.9236559335889205),
            (0.06680325101084959, 0.9236559335889205, 0.009540815400229894),
            (0.06680325101084959, 0.009540815400229894, 0.9236559335889205),
        ],
        [
            0.09081799038728096,
            0.03672595775544516,
            0.03672595775544516,
            0.03672595775544516,
            0.04532105943520167,
            0.04532105943520167,
            0.04532105943520167,
            0.028327242529996674,
            0.028327242529996674,
            0.028327242529996674,
            0.028327242529996674,
            0.028327242529996674,
            0.028327242529996674,
            0.07275791684673105,
            0.07275791684673105,
            0.07275791684673105,
            0.07275791684673105,
            0.07275791684673105,
            0.07275791684673105,
            0.009421666963402024,
            0.009421666963402024,
            0.009421666963402024,
            0.009421666963402024,
            0.009421666963402024,
            0.009421666963402024,
        ],
    ),
}
