# CLI Package - thin layer from parsed arguments to library calls
