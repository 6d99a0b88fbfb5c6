# Factors Package - Polya frequency and absolutely monotone-then-completely
# monotone building blocks
