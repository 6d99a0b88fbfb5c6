# Whale Package - exponential sums with a prescribed sign-change profile
