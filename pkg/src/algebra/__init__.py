"""QQ[x, y] の厳密な代数: 多項式、グレブナー基底、商環、補間、数体"""
