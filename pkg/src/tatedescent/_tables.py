"""Hard-coded structure tables for the built-in algebras.

Regenerate with ``hopf.to_table(hopf.from_presentation(**hopf.A1_PRESENTATION))``;
the test suite checks they agree with the presentations.
"""

E1_TABLE = {'antipode': (1, 2, 4, 8),
 'comult': (((0, 0),), ((0, 1), (1, 0)), ((0, 2), (2, 0)), ((0, 3), (1, 2), (2, 1), (3, 0))),
 'degrees': (0, 1, 3, 4),
 'expressions': (((),), ((0,),), ((1,),), ((0, 1),)),
 'generators': (1, 2),
 'mult': ((1, 2, 4, 8), (2, 0, 8, 0), (4, 8, 0, 0), (8, 0, 0, 0)),
 'name': 'E(1)',
 'names': ('1', 'Q0', 'Q1', 'Q0Q1'),
 'quasi_elementary': (('E(1)', (2, 4)),),
 'relations': (('Q0^2', ((0, 0),)), ('Q1^2', ((1, 1),)), ('Q0Q1+Q1Q0', ((0, 1), (1, 0)))),
 'unit': 0}

A1_TABLE = {'antipode': (1, 2, 4, 16, 8, 32, 64, 128),
 'comult': (((0, 0),), ((0, 1), (1, 0)), ((0, 2), (1, 1), (2, 0)), ((0, 3), (1, 2), (2, 1), (3, 0)),
            ((0, 4), (1, 2), (2, 1), (4, 0)), ((0, 5), (1, 3), (1, 4), (3, 1), (4, 1), (5, 0)),
            ((0, 6), (1, 5), (2, 3), (2, 4), (3, 2), (4, 2), (5, 1), (6, 0)),
            ((0, 7), (1, 6), (2, 5), (3, 4), (4, 3), (5, 2), (6, 1), (7, 0))),
 'degrees': (0, 1, 2, 3, 3, 4, 5, 6),
 'expressions': (((),), ((0,),), ((1,),), ((0, 1),), ((1, 0),), ((0, 1, 0),), ((1, 0, 1),),
                 ((0, 1, 0, 1),)),
 'generators': (1, 2),
 'mult': ((1, 2, 4, 8, 16, 32, 64, 128), (2, 0, 8, 0, 32, 0, 128, 0), (4, 16, 32, 64, 0, 128, 0, 0),
          (8, 32, 0, 128, 0, 0, 0, 0), (16, 0, 64, 0, 128, 0, 0, 0), (32, 0, 128, 0, 0, 0, 0, 0),
          (64, 128, 0, 0, 0, 0, 0, 0), (128, 0, 0, 0, 0, 0, 0, 0)),
 'name': 'A(1)',
 'names': ('1', 'Sq1', 'Sq2', 'Sq1Sq2', 'Sq2Sq1', 'Sq1Sq2Sq1', 'Sq2Sq1Sq2', 'Sq1Sq2Sq1Sq2'),
 'quasi_elementary': (('E(1)', (2, 24)),),
 'relations': (('Sq1^2', ((0, 0),)), ('Sq2^2+Sq1Sq2Sq1', ((1, 1), (0, 1, 0)))),
 'unit': 0}
