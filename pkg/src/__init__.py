"""
Laboratório GPS de Caudas Pesadas

Simulação de um servidor GPS (Generalized Processor Sharing) de duas classes
alimentado por entradas Lévy de cauda pesada (Poisson composto com jobs
Pareto e movimento alfa-estável), estimação da cauda estacionária
P(Q1 > u) e comparação com as assíntotas de cada regime de carga.
"""

__version__ = "1.0.0"
__author__ = "GPS Lab Team"
__description__ = "Assíntotas de cauda em filas GPS com entradas Lévy de cauda pesada"
