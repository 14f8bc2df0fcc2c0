#!/usr/bin/env python3
"""Builds the held-out language-ID evaluation fixture.

Composes 200 snippets (>= 200 chars each) for it/en/de from sentence pools
that are disjoint from the training seeds under tests/data/langid_seeds/,
and writes them as JSONL to tests/data/langid_holdout.jsonl. Deterministic:
snippet i of a language starts at sentence (i * 3) mod len(pool) and takes
consecutive sentences (wrapping) until the length floor is met.
"""

import json
import pathlib

IT_POOL = [
    "Il treno delle sette attraversa la pianura mentre la nebbia si alza lentamente dai campi coltivati.",
    "Mia nonna preparava la conserva di pomodoro in agosto, e tutta la casa profumava di basilico fresco.",
    "Il sindaco ha annunciato che la biblioteca comunale resterà aperta anche la domenica pomeriggio.",
    "Sul sentiero che sale al rifugio abbiamo incontrato un gregge di pecore guidato da due cani attenti.",
    "La farmacia del paese chiude alle tredici, ma per le urgenze c'è sempre il numero di turno esposto.",
    "Durante il restauro della chiesa sono emersi affreschi che nessuno ricordava di aver mai visto.",
    "Il mercato del giovedì riempie la piazza di banchi di frutta, verdura, formaggi e stoffe colorate.",
    "I ragazzi della squadra si allenano due volte alla settimana sul campo dietro la stazione vecchia.",
    "Per la festa del patrono l'intero quartiere appende luminarie e prepara dolci secondo la ricetta antica.",
    "L'autobus per la città parte ogni ora dal piazzale, tranne la domenica quando passa solo al mattino.",
    "Nel cortile della scuola elementare è stato piantato un ciliegio per ricordare la maestra andata in pensione.",
    "Il meccanico mi ha consigliato di cambiare le gomme prima di affrontare il viaggio verso le montagne.",
    "La ricetta del ragù richiede pazienza: deve cuocere piano per almeno tre ore, mescolando ogni tanto.",
    "Dalla terrazza del castello si vede tutta la vallata, con i filari di viti che disegnano linee ordinate.",
    "Il postino conosce tutti gli abitanti del borgo e lascia i pacchi dal fornaio quando non trova nessuno.",
    "Quest'anno la vendemmia è cominciata presto per via del caldo, e i grappoli erano dolcissimi.",
    "Alla sagra del paese si mangiano tortelli fatti a mano e si balla in piazza fino a mezzanotte.",
    "Il professore di storia ci portava ogni primavera a visitare gli scavi romani vicino al fiume.",
    "La barca dei pescatori rientra all'alba, e sul molo comincia subito la vendita del pesce fresco.",
    "Mio zio ripara orologi antichi nel suo laboratorio pieno di ingranaggi, lenti e cassetti minuscoli.",
    "Il temporale estivo ha rinfrescato l'aria e riempito le strade del profumo della terra bagnata.",
    "In biblioteca c'è una sala silenziosa dove gli studenti preparano gli esami fino a tarda sera.",
    "La corriera si ferma davanti al bar centrale, dove gli anziani giocano a carte tutto il pomeriggio.",
    "Per arrivare al faro bisogna percorrere un sentiero stretto che costeggia le scogliere bianche.",
    "La pasticceria all'angolo sforna cornetti caldi alle sei e mezza, e la fila arriva fino al semaforo.",
    "Il coro della parrocchia prova ogni martedì sera, e le voci si sentono fin dalla strada.",
    "Abbiamo raccolto le castagne nel bosco dietro casa e le abbiamo arrostite sul fuoco del camino.",
    "Il giornale locale racconta da cent'anni le piccole e grandi storie di questa comunità di collina.",
]

EN_POOL = [
    "The ferry leaves the harbour at dawn, carrying islanders, mail sacks, and crates of vegetables to the mainland.",
    "Our neighbour repairs old bicycles in his shed and gives them away to children on the street every spring.",
    "The museum's new wing houses a collection of maps drawn by sailors who never saw the coastlines they charted.",
    "After the storm, volunteers cleared fallen branches from the towpath so cyclists could pass safely again.",
    "The bakery on the corner sells out of sourdough by nine, so regulars arrive before the kettle has boiled.",
    "A pair of swans nested by the weir this year, and the whole village followed the progress of the cygnets.",
    "The night train crosses the border while passengers sleep, and breakfast arrives with a different landscape.",
    "Her allotment produces more courgettes than any family could eat, so the surplus ends up on the office table.",
    "The lighthouse keeper's logbook records a century of gales, shipwrecks, and quiet evenings without incident.",
    "Schoolchildren rehearsed the play for weeks, and the church hall was full long before the curtain rose.",
    "The secondhand bookshop smells of dust and vanilla, and its owner can find any title without a catalogue.",
    "Climbers set out before sunrise to reach the ridge while the snow was still firm under their boots.",
    "The town council voted to plant two hundred trees along the ring road before the end of the autumn.",
    "At the farmers' market, the cheesemaker lets you taste everything twice before you choose a wedge.",
    "The orchestra tuned their instruments as latecomers hurried down the aisles clutching their programmes.",
    "His grandfather kept bees behind the orchard, and the honey jars were labelled in careful copperplate.",
    "The canal boat moves at walking pace, which is exactly the speed at which the countryside looks best.",
    "Rain delayed the cricket match until tea time, and nobody in the pavilion seemed to mind at all.",
    "The research station records wind speeds that would strip paint, yet the instruments survive each winter.",
    "She learned to navigate by the stars during a sailing course off the rocky coast one cold September.",
    "The old mill has been converted into flats, but the waterwheel still turns on open-heritage weekends.",
    "Commuters shared umbrellas on the platform while the tannoy apologised for the late running service.",
    "The mountain rescue team trains every Wednesday, abseiling from the quarry face in all weathers.",
    "A fox crosses the garden at the same hour each evening, pausing by the pond as if checking the time.",
    "The chess club meets above the post office, and the kettle is always on before the first move is played.",
    "Archaeologists found a hoard of coins beneath the barley field, buried in a jar two thousand years ago.",
    "The cathedral choir sang the final note and let it hang in the cold air for what felt like a minute.",
    "By the time the marathon leaders reached the bridge, the crowd was ten deep and roaring encouragement.",
]

DE_POOL = [
    "Der Bäcker an der Ecke öffnet um sechs, und der Duft von frischen Brötchen zieht durch die ganze Straße.",
    "Im Herbst sammeln die Kinder Kastanien im Park und basteln daraus kleine Tiere mit Streichhölzern.",
    "Die Dorfkapelle probt jeden Donnerstag im Gasthaus, und die Blasmusik ist bis zum Bahnhof zu hören.",
    "Nach dem Gewitter rochen die Wiesen nach nasser Erde, und über dem Tal stand ein doppelter Regenbogen.",
    "Der Nachtzug hält kurz an der Grenze, dann rollt er weiter durch die dunklen Wälder nach Süden.",
    "Meine Tante strickt jeden Winter Socken für die ganze Familie, und niemand darf sich beschweren.",
    "Die Bibliothek verlängert im Prüfungsmonat ihre Öffnungszeiten, und die Lesesäle sind bis Mitternacht voll.",
    "Am Sonntagmorgen treffen sich die Radfahrer am Marktplatz und fahren gemeinsam die Flussroute entlang.",
    "Der alte Leuchtturm wurde renoviert und beherbergt jetzt ein kleines Museum über die Seefahrt.",
    "In der Werkstatt meines Großvaters hängen Werkzeuge, deren Namen heute kaum noch jemand kennt.",
    "Die Straßenbahn quietscht in der Kurve vor dem Theater, und die Tauben fliegen jedes Mal erschrocken auf.",
    "Zur Apfelernte kommen alle Nachbarn in den Garten, und abends wird frischer Most gepresst.",
    "Der Wetterbericht versprach Sonne, doch über dem Gebirge hingen schon am Mittag schwere Wolken.",
    "Im Schwimmbad riecht es nach Chlor und Pommes, und vom Sprungturm hört man das Kreischen der Mutigen.",
    "Die Studenten diskutierten in der Mensa so laut über das Seminar, dass das Essen kalt wurde.",
    "Auf dem Flohmarkt fand sie eine Schreibmaschine, die noch tadellos funktionierte, für zehn Euro.",
    "Der Förster zeigte uns die Spuren der Wildschweine und erklärte, warum der Totholzhaufen wichtig ist.",
    "Am Heiligabend läuten alle Glocken der Stadt gleichzeitig, und auf den Straßen wird es still.",
    "Die Fähre über den See fährt nur im Sommer, im Winter muss man den langen Weg ums Ufer nehmen.",
    "In der Backstube wird schon um drei Uhr morgens gearbeitet, damit die Regale um sieben voll sind.",
    "Der Verein sucht Freiwillige für das Sommerfest, und die Liste am schwarzen Brett ist schnell voll.",
    "Mit dem ersten Schnee holen die Kinder ihre Schlitten vom Dachboden und besetzen den Hügel hinter der Schule.",
    "Die Professorin erklärte den Versuch dreimal, bis auch in der letzten Reihe alle Köpfe nickten.",
    "Am Kiosk an der Haltestelle gibt es Zeitungen, Kaugummi und die besten Gespräche des Viertels.",
    "Der Briefträger kennt jeden Hund der Siedlung beim Namen und hat für jeden ein Leckerli dabei.",
    "Beim Stadtlauf klatschen die Zuschauer auch für die Letzten, und die Kapelle spielt bis zum Abend.",
    "Die Weinlese beginnt dieses Jahr früher, weil der Sommer heiß und trocken gewesen ist.",
    "Im Hinterhof übt jemand seit Wochen Trompete, und langsam erkennt man sogar die Melodie.",
]

MIN_CHARS = 200


def build_snippets(pool, count, start_stride=3):
    snippets = []
    for i in range(count):
        idx = (i * start_stride) % len(pool)
        parts = []
        while len(" ".join(parts)) < MIN_CHARS:
            parts.append(pool[idx % len(pool)])
            idx += 1
        snippets.append(" ".join(parts))
    return snippets


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    out_path = root / "tests" / "data" / "langid_holdout.jsonl"
    rows = []
    for lang, pool, count in (("it", IT_POOL, 67), ("en", EN_POOL, 67),
                              ("de", DE_POOL, 66)):
        for text in build_snippets(pool, count):
            assert len(text) >= MIN_CHARS
            rows.append({"lang": lang, "text": text})
    with open(out_path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {len(rows)} snippets to {out_path}")


if __name__ == "__main__":
    main()
