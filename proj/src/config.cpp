namespace roughflow {}
