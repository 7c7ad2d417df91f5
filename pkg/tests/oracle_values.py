"""Frozen mpmath reference values (scripts/freeze_oracles.py)."""

ORACLES = {'gamma': [((0.5+0.5j), (0.8181639995417473-0.7633138287139826j)),
           ((-2.3+1.7j), (0.014368574832446983-0.011193978994831532j)),
           ((7.25-3.5j), (413.38648914857976-252.49453307381924j)),
           ((0.3122-4.2j), (8.540723769579507e-05-0.002610887735911364j))],
 'loggamma': [((120.5+40j), (448.8692439313377+192.2170507177147j)),
              ((0.01+0.01j), (4.252825229690083-0.7910066279294383j))],
 'digamma': [((0.5+0.5j), (-0.8681073626454773+1.4406595199775145j)),
             ((-1.5+0.25j), (0.7104873929394129+1.9382272327368981j)),
             ((12-30j), (3.469718059713958-1.2047128225175439j))],
 'phi': [((0.3-0.6j), 1.6, (-0-2j), (0.38955217652931784-0.01113533692875276j)),
         ((0.5+1.2j), 2.0, 7.5j, (-0.01335951762803584-0.1022602649674352j)),
         ((-1.2+0.3j), 1.624, (3-1j), (-1.2493237852383896+0.6173341648494435j)),
         ((0.3122-0.95j), 1.6245, (-0-24j), (-0.10804476106275782+0.06479700482131148j)),
         ((1-2j), 0.4, (-0-45j), (-6.298759910917536+0.6812983627618401j))],
 'psi': [((0.3-0.6j), 1.6, (2+0.5j), (0.7821688291132334+0.2910547684127397j)),
         ((0.3122-0.95j), 1.6245, (-0-6j), (-1.7771809870442576+1.8462046906949388j)),
         ((1.3122-0.95j), 1.6245, (20-3j), (-0.021934991091696113+8.388249098656692e-05j)),
         ((0.5+0.2j), 2.0, 4.0, (0.5129079482131985-0.14733455633080497j))],
 'omega': [(0.5, -1, (0.3+0.4j), 0.7, (-0.12223015609571578-0.27485863642080277j)),
           (0.95, -1, (1.5+0.2j), 1.3, (0.02350457626881394-0.06883869476322248j)),
           (0.95, 1, (-0.4+0.6j), 0.9, (-0.19124161156442723-0.07326497959380261j)),
           (1.9, -2, (0.2+1j), 2.0, (-0.013875424174478625+0.01067870839873883j))],
 'wr_u1_u2': [(0.5, -1, (0.3+0.4j), 0.7, (-3.4641016151377544-3.5873240686715317e-41j)),
              (0.95, -1, (1.5+0.2j), 1.3, (-0.6573682103577263-1.126000192279963e-18j)),
              (0.95, 1, (-0.4+0.6j), 0.9, (-0.6573682103577265-1.4037741277765462e-17j)),
              (1.9, -2, (0.2+1j), 2.0, (-0.6573682103577196+1.865906081798177e-14j))]}
