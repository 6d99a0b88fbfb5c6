# Offline check()-style suites; see test_offline_suites.py
