# Exact Package - closed-form derivatives and certified zero tables
