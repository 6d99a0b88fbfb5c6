# Post Package - Post approximants and the g_n functions
