#!/usr/bin/env python3
"""Build the Turkish vocabulary used for the stemmer golden file.

Combines a curated root list with systematically generated inflections
(plural, possessive, case, copula chains, and -ki constructions) so the
golden file exercises every suffix family the affix stemmer knows about.
Surface forms are produced with real vowel harmony and final-consonant
alternation, which is what the stemmer has to undo.

Usage: python3 tools/make_wordlist.py > /tmp/wordlist.txt
"""

import sys

VOWELS = set("aeıioöuü")
BACK = set("aıou")
ROUNDED = set("ouöü")
# root-final consonant softening before vowel-initial suffixes
SOFTEN = {"p": "b", "ç": "c", "t": "d", "k": "ğ"}
HARDEN_AFTER = set("fstkçşhp")  # suffix-initial d -> t after these


def last_vowel(word):
    for ch in reversed(word):
        if ch in VOWELS:
            return ch
    return None


def harmonize(word, template):
    """Resolve A/U/D meta-letters in a suffix template against *word*."""
    out = []
    prev = word
    for ch in template:
        if ch == "A":
            v = last_vowel(prev + "".join(out))
            out.append("a" if (v is None or v in BACK) else "e")
        elif ch == "U":
            v = last_vowel(prev + "".join(out))
            if v is None:
                out.append("ı")
            elif v in BACK:
                out.append("u" if v in ROUNDED else "ı")
            else:
                out.append("ü" if v in ROUNDED else "i")
        elif ch == "D":
            tail = (prev + "".join(out))[-1]
            out.append("t" if tail in HARDEN_AFTER else "d")
        else:
            out.append(ch)
    return "".join(out)


def attach(word, template, soften=True):
    """Attach one suffix template, inserting buffers and softening finals."""
    starts_with_vowel = template[0] in "AU"
    stem = word
    if starts_with_vowel and soften and stem[-1] in SOFTEN and len(stem) > 2:
        stem = stem[:-1] + SOFTEN[stem[-1]]
    if starts_with_vowel and stem[-1] in VOWELS:
        template = "y" + template
    if template.startswith("lA") and len(template) == 2 and stem[-1] in VOWELS:
        template = "ylA"  # instrumental clitic takes a y buffer
    return stem + harmonize(stem, template)


def chain(word, templates, soften=True):
    for t in templates:
        word = attach(word, t, soften=soften)
    return word


# Common nouns, mixed harmony classes and final consonants.
NOUN_ROOTS = """
ev araba kitap okul kedi köpek ağaç çiçek masa kapı pencere yol deniz dağ
göl nehir şehir köy ülke dünya gök yıldız güneş ay gece gündüz sabah akşam
öğle hafta yıl zaman saat dakika insan adam kadın çocuk bebek anne baba
kardeş abla ağabey dede nine amca teyze dayı hala arkadaş dost düşman
öğretmen öğrenci doktor hemşire asker polis işçi memur müdür başkan kral
sultan asker savaş barış ordu silah bomba uçak gemi tren otobüs taksi
bisiklet kamyon yemek ekmek süt peynir zeytin çay kahve şeker tuz
et balık tavuk pilav çorba meyve sebze elma armut üzüm kiraz portakal
limon domates biber patates soğan sarımsak para lira banka borsa fiyat
ücret maaş vergi market dükkan fabrika şirket ofis hastane eczane okul
üniversite kütüphane cami kilise müze sinema tiyatro park bahçe orman
hayvan kuş at inek koyun keçi aslan kaplan ayı kurt tilki tavşan fare
yılan balina köpekbalığı göz kulak burun ağız diş dil saç baş boyun omuz
kol el parmak bacak ayak kalp akciğer mide kan kemik deri ses söz kelime
cümle dil harf sayı soru cevap fikir düşünce bilgi haber gazete dergi
televizyon radyo telefon bilgisayar internet mektup kağıt kalem defter
çanta gözlük anahtar kilit kapı duvar çatı oda mutfak banyo tuvalet
salon yatak yastık battaniye halı perde lamba ayna dolap raf sandalye
koltuk sehpa renk beyaz siyah kırmızı mavi yeşil sarı mor pembe gri
kahverengi hava su ateş toprak rüzgar yağmur kar dolu sis bulut şimşek
deprem sel fırtına sıcaklık soğuk ilkbahar yaz sonbahar kış spor futbol
basketbol voleybol tenis yüzme koşu maç takım oyuncu hakem gol sayı
müzik şarkı türkü nota gitar piyano keman davul resim fotoğraf film
roman hikaye şiir masal efsane tarih coğrafya matematik fizik kimya
biyoloji edebiyat sanat bilim teknoloji uzay gezegen yıldız kuyruklu
hükümet devlet millet vatan bayrak ordu yasa kanun hak özgürlük adalet
mahkeme hakim avukat suç ceza hapishane seçim oy parti meclis milletvekili
belediye vali kaymakam muhtar sokak cadde meydan köprü tünel liman
havaalanı istasyon durak bilet yolcu turist otel pansiyon plaj ada
yarımada körfez boğaz kıta sınır harita pusula kuzey güney doğu batı
amaç sonuç sebep neden örnek sorun çözüm proje plan hedef başarı
başarısızlık hata doğru yanlış gerçek yalan rüya umut korku sevgi aşk
mutluluk üzüntü öfke merak heyecan sabır cesaret akıl zeka hafıza dikkat
""".split()

# Words kept as-is (already inflected, function words, loanwords, verbs).
STANDALONE = """
ve veya ama fakat ancak çünkü eğer ki de da ile için gibi kadar göre
sonra önce şimdi bugün yarın dün hep hiç çok az daha en pek yine gene
belki mutlaka asla elbette tabii evet hayır değil var yok bu şu o ben
sen biz siz onlar kim ne nerede nereye nereden niçin neden nasıl hangi
kaç birkaç bazı bütün tüm her hiçbir başka diğer aynı böyle şöyle öyle
bir iki üç dört beş altı yedi sekiz dokuz on yirmi otuz kırk elli
altmış yetmiş seksen doksan yüz bin milyon milyar birinci ikinci üçüncü
geliyorum geliyorsun geliyor geliyoruz geliyorsunuz geliyorlar geldim
geldin geldi geldik geldiniz geldiler gelmişim gelmiş gelecek gelecekler
gelirdi gelirmiş gelse gelseydi gelmeli gelmeliyim gelebilir gelemez
gitti gidiyor gidecek gitmiş giderken giderek gitmek gitmeye gittikçe
yaptı yapıyor yapacak yapmış yaparken yaparak yapmak yapılan yapılmış
oldu oluyor olacak olmuş olurken olarak olmak olan olanlar olduğu
söyledi söylüyor söyleyecek söylemiş söylerken söyleyerek söylemek
gördü görüyor görecek görmüş görürken görerek görmek gören görünen
aldı alıyor alacak almış alırken alarak almak alan alınan verdim verdi
veriyor verecek vermiş verirken vererek vermek veren verilen bildi
biliyor bilecek bilmiş bilirken bilerek bilmek bilen bilinen istedi
istiyor isteyecek istemiş isterken isteyerek istemek isteyen istenen
başladı başlıyor başlayacak başlamış başlarken başlayarak başlamak
bitti bitiyor bitecek bitmiş biterken biterek bitmek kaldı kalıyor
kalacak kalmış kalırken kalarak kalmak düştü düşüyor düşecek düşmüş
koştu koşuyor koşacak koşmuş yazdı yazıyor yazacak yazmış okudu okuyor
okuyacak okumuş anladı anlıyor anlayacak anlamış sordu soruyor soracak
sormuş buldu buluyor bulacak bulmuş durdu duruyor duracak durmuş
açtı açıyor açacak açmış kapattı kapatıyor kapatacak kapatmış
internet televizyon radyo taksi otel sinema tiyatro doktor profesör
jandarma general albay asistan arşiv program sistem model motor
telefon mikrofon kamera video stüdyo banka kredi dolar euro sterlin
futbol basketbol tenis golf maraton atletizm jimnastik
istanbul ankara izmir bursa adana antalya konya gaziantep mersin
diyarbakır eskişehir samsun trabzon erzurum malatya denizli kayseri
türkiye almanya fransa italya ispanya ingiltere amerika rusya çin
japonya hindistan mısır yunanistan bulgaristan suriye irak iran
atatürk mehmet mustafa ahmet ali hasan hüseyin ibrahim osman süleyman
ayşe fatma emine hatice zeynep elif meryem zehra önder yılmaz kaya
demir çelik şahin doğan arslan aydın özdemir kaplan çetin kurt koç
ad soyad adı soyadı adlar soyadlar adımız soyadınız
ab abd tbmm chp akp mhp nato ifade lafı
öğretmenim öğretmensin öğretmendir öğretmeniz öğretmensiniz öğretmenler
öğretmenmiş öğretmendi öğretmense öğretmenken öğretmencesine
doktorum doktorsun doktordur doktoruz doktorsunuz doktormuş doktordu
hastayım hastasın hastadır hastayız hastasınız hastaymış hastaydı hastaysa
iyiyim iyisin iyidir iyiyiz iyisiniz iyiymiş iyiydi iyiyken
buradayım buradasınız oradaydı neredesiniz kimsiniz nesiniz
yorgunum yorgunsun yorgundur yorgunuz yorgunsunuz yorgunmuş yorgundu
""".split()

# Suffix chains attached to every sampled noun root. Templates use
# A/U/D meta-letters; buffer consonants are inserted automatically.
CHAINS = [
    ["lAr"],
    ["lArU"],          # plural + 3sg possessive / accusative
    ["Um"],
    ["UmUz"],
    ["Un"],
    ["UnUz"],
    ["U"],
    ["A"],
    ["DA"],
    ["DAn"],
    ["lA"],
    ["nUn"],
    ["lArUn"],
    ["lArdA"],
    ["lArdAn"],
    ["lArUmUz"],
    ["lArUmUzdAn"],
    ["UmdA"],
    ["UndA"],
    ["UndAn"],
    ["UnA"],
    ["UnU"],
    ["sU"],
    ["sUnA"],
    ["sUndA"],
    ["DAki"],
    ["DAkilAr"],       # not harmonic for ki-words; the stemmer only knows 'ki'
    ["lArdAki"],
    ["UmUzdAki"],
    ["DUr"],
    ["lArdUr"],
    ["DAndUr"],
    ["mUş"],
    ["mUştU"],
    ["DU"],
    ["sA"],
    ["ken"],
    ["sUn"],
    ["sUnUz"],
    ["sUnUzdUr"],
    ["Um"],
    ["Uz"],
    ["UmdUr"],
    ["nUzdU"],
    ["ydU"],
    ["ysA"],
    ["yken"],
    ["ymUş"],
    ["cAsInA_"],       # placeholder, resolved below
    ["cA"],
    ["lArlA"],
    ["lArU", "nUn"],
    ["sU", "ylA"],
]


def casina(word):
    v = last_vowel(word)
    return word + ("casına" if (v is None or v in BACK) else "cesine")


def main():
    words = []
    seen = set()

    def add(w):
        w = w.strip()
        if w and w not in seen:
            seen.add(w)
            words.append(w)

    for w in NOUN_ROOTS:
        add(w)
    for w in STANDALONE:
        add(w)

    for i, root in enumerate(NOUN_ROOTS):
        # rotate through chains so every chain gets broad coverage without
        # exploding the list size
        for j, templates in enumerate(CHAINS):
            if (i + j) % 3 != 0 and j >= 12:
                continue
            if templates == ["cAsInA_"]:
                add(casina(root))
                continue
            try:
                add(chain(root, templates))
            except IndexError:
                pass

    for w in sorted(words):
        sys.stdout.write(w + "\n")


if __name__ == "__main__":
    main()
